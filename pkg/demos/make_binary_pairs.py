#!/usr/bin/env python3
"""Carve a binary one-vs-one task out of a multiclass LIBSVM file.

Useful for preparing digit-pair datasets (e.g. class 0 vs class 1) for the
reference-accuracy tests: the first class maps to +1, the second to -1, all
other rows are dropped.

    python3 demos/make_binary_pairs.py mnist.scale 0 1 datasets/mnist-0v1.train.libsvm
"""

import gzip
import sys


def main(argv):
    if len(argv) != 5:
        print(__doc__)
        return 1
    src, pos_label, neg_label, dst = argv[1], argv[2], argv[3], argv[4]
    kept = 0
    opener = gzip.open if src.endswith(".gz") else open
    with opener(src, "rt", encoding="utf-8") as fin, open(dst, "w", encoding="utf-8") as fout:
        for line in fin:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            label, _, rest = line.partition(" ")
            if not rest.strip():
                continue
            try:
                label_value = float(label)
            except ValueError:
                continue
            if label_value == float(pos_label):
                fout.write(f"+1 {rest}\n")
                kept += 1
            elif label_value == float(neg_label):
                fout.write(f"-1 {rest}\n")
                kept += 1
    print(f"wrote {kept} examples to {dst}")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
