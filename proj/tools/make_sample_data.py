# Copyright 2026 The shortopic Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes the bundled sample corpus: short labelled texts from four classes."""

import argparse
import pathlib
import random

CLASSES = {
    "sports": "match goal team coach league score player season striker keeper "
              "penalty final cup stadium fans referee win loss derby transfer "
              "training injury captain midfield tackle",
    "food": "recipe oven bake flour sugar butter garlic onion pasta sauce "
            "dinner lunch spicy soup salad bread cheese tomato grill roast "
            "kitchen chef taste dessert noodles",
    "tech": "phone laptop software update battery screen app android iphone "
            "chip processor cloud server code bug release developer browser "
            "camera wifi gadget startup keyboard linux",
    "weather": "rain storm sunny cloudy forecast wind snow temperature humid "
               "thunder flood heatwave frost breeze degrees umbrella drizzle "
               "hail fog cold warm morning tonight weekend alert",
}
SHARED = "today new great really just big best".split()
UNSEEN_EXTRA = "podcast marathon smoothie satellite tornado".split()


def sentence(rng, words, extra=()):
    n = rng.randint(4, 9)
    out = []
    for _ in range(n):
        r = rng.random()
        if r < 0.12:
            out.append(rng.choice(SHARED))
        elif extra and r < 0.2:
            out.append(rng.choice(extra))
        else:
            out.append(rng.choice(words))
    return " ".join(out)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="data/sample")
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    names = list(CLASSES)
    vocab = {c: CLASSES[c].split() for c in names}

    labels = [names[i % len(names)] for i in range(100)]
    rng.shuffle(labels)
    (out / "test.txt").write_text("".join(sentence(rng, vocab[c]) + "\n" for c in labels))
    (out / "test_label.txt").write_text("".join(c + "\n" for c in labels))

    unseen = [names[i % len(names)] for i in range(20)]
    rng.shuffle(unseen)
    (out / "unseen.txt").write_text(
        "".join(sentence(rng, vocab[c], UNSEEN_EXTRA) + "\n" for c in unseen))
    (out / "unseen_label.txt").write_text("".join(c + "\n" for c in unseen))


if __name__ == "__main__":
    main()
