#!/usr/bin/env python3
# Copyright 2026 The Authors.
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
"""Recomputes the byte size of an emitted graph directory from its TSV files.

Prints the byte count. With --budget, exits 1 when the count exceeds it.
"""

import argparse
import pathlib
import sys

FEATURE_BYTES = 4
ID_BYTES = 8
LABEL_BYTES = 4


def account(directory: pathlib.Path) -> int:
  nodes = 0
  dim = None
  labeled = False
  with open(directory / "nodes.tsv") as f:
    for line in f:
      line = line.rstrip("\n")
      if not line or line.startswith("#"):
        continue
      fields = line.split("\t")
      nodes += 1
      if fields[1] != "-1":
        labeled = True
      width = len(fields[2].split(","))
      if dim is not None and width != dim:
        raise ValueError(f"ragged feature rows in {directory}")
      dim = width
  slots = 0
  with open(directory / "edges.tsv") as f:
    for line in f:
      line = line.rstrip("\n")
      if not line or line.startswith("#"):
        continue
      u, v = line.split("\t")[:2]
      slots += 1 if u == v else 2
  total = nodes * ((dim or 0) * FEATURE_BYTES + ID_BYTES) + slots * ID_BYTES
  if labeled:
    total += nodes * LABEL_BYTES
  return total


def main() -> int:
  parser = argparse.ArgumentParser(description=__doc__)
  parser.add_argument("dir", type=pathlib.Path)
  parser.add_argument("--budget", type=int)
  args = parser.parse_args()
  total = account(args.dir)
  print(total)
  if args.budget is not None and total > args.budget:
    print(f"over budget: {total} > {args.budget}", file=sys.stderr)
    return 1
  return 0


if __name__ == "__main__":
  sys.exit(main())
