#!/usr/bin/env python3
# Copyright 2026 The samlfd Authors
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

"""Convert LASA handwriting .mat files into the CSV layout `samlfd bias-study --lasa` reads.

Each <Shape>.mat holds a `demos` cell array whose entries carry `pos` (2 x N)
and `t` (1 x N). The output is one <Shape>.csv per input with the columns
demo,t,x,y.
"""

import argparse
import csv
import pathlib
import sys

import numpy as np
from scipy.io import loadmat


def demos_of(mat_path):
    data = loadmat(mat_path, squeeze_me=True, struct_as_record=False)
    demos = np.atleast_1d(data["demos"])
    for index, demo in enumerate(demos):
        pos = np.asarray(demo.pos, dtype=float)
        t = np.asarray(getattr(demo, "t", np.arange(pos.shape[1])), dtype=float).ravel()
        yield index, t, pos


def convert(mat_path, out_dir):
    out_path = out_dir / (mat_path.stem + ".csv")
    with out_path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["demo", "t", "x", "y"])
        for index, t, pos in demos_of(mat_path):
            for k in range(pos.shape[1]):
                writer.writerow([index, repr(float(t[k])), repr(float(pos[0, k])), repr(float(pos[1, k]))])
    return out_path


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("dataset", type=pathlib.Path, help="directory containing the LASA .mat files")
    parser.add_argument("out", type=pathlib.Path, help="directory that receives the CSV files")
    args = parser.parse_args(argv)

    files = sorted(args.dataset.glob("*.mat"))
    if not files:
        print(f"no .mat files in {args.dataset}", file=sys.stderr)
        return 2
    args.out.mkdir(parents=True, exist_ok=True)
    for mat_path in files:
        try:
            print(convert(mat_path, args.out))
        except (KeyError, ValueError, AttributeError) as exc:
            print(f"skipped {mat_path.name}: {exc}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
