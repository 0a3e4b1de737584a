#!/usr/bin/env python3
# Copyright 2026 The robnet Authors
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
"""Convert SNDlib native Abilene demand matrices into wide monthly CSVs.

Usage: abilene_to_csv.py MATRIX_DIR NETWORK.json OUT_DIR

MATRIX_DIR holds files named like demandMatrix-abilene-zhang-5min-20040701-0000.txt.
Each output file OUT_DIR/monthMM.csv has one row per 5-minute matrix and one
column per unordered node pair, in the commodity order robnet uses.
"""
import argparse
import json
import pathlib
import re
import sys

NAME = re.compile(r"(\d{4})(\d{2})(\d{2})-(\d{2})(\d{2})\.txt$")
DEMAND = re.compile(r"^\s*\S+\s*\(\s*(\S+)\s+(\S+)\s*\)\s+\S+\s+([-+0-9.eE]+)")


def read_matrix(path, index, kappa):
    row = [0.0] * kappa
    inside = False
    with open(path, encoding="ascii", errors="replace") as f:
        for line in f:
            stripped = line.strip()
            if stripped.startswith("DEMANDS"):
                inside = True
                continue
            if inside and stripped == ")":
                break
            if not inside:
                continue
            m = DEMAND.match(line)
            if not m:
                continue
            a, b, value = m.group(1), m.group(2), float(m.group(3))
            if a == b:
                continue
            key = (a, b) if a < b else (b, a)
            if key not in index:
                raise SystemExit(f"{path}: unknown node pair {a} {b}")
            row[index[key]] += value
    return row


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("matrix_dir", type=pathlib.Path)
    parser.add_argument("network", type=pathlib.Path)
    parser.add_argument("out_dir", type=pathlib.Path)
    args = parser.parse_args()

    nodes = sorted(json.loads(args.network.read_text())["nodes"], key=lambda n: n["id"])
    names = [n["name"] for n in nodes]
    index = {}
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            a, b = names[i], names[j]
            index[(a, b) if a < b else (b, a)] = len(index)
    kappa = len(index)

    months = {}
    for path in sorted(args.matrix_dir.iterdir()):
        m = NAME.search(path.name)
        if m:
            months.setdefault(m.group(2), []).append((m, path))
    if not months:
        print(f"no demand matrices found in {args.matrix_dir}", file=sys.stderr)
        return 2

    args.out_dir.mkdir(parents=True, exist_ok=True)
    header = "timestamp," + ",".join(f"k{k}" for k in range(kappa)) + "\n"
    for month, files in sorted(months.items()):
        out = args.out_dir / f"month{month}.csv"
        with open(out, "w", encoding="ascii", newline="") as f:
            f.write(header)
            for m, path in files:
                y, mo, d, hh, mm = m.groups()
                row = read_matrix(path, index, kappa)
                f.write(f"{y}-{mo}-{d}T{hh}:{mm}," + ",".join(repr(v) for v in row) + "\n")
        print(f"{out}: {len(files)} rows")
    return 0


if __name__ == "__main__":
    sys.exit(main())
