#!/usr/bin/env python3
# Copyright 2026 The ctforge Authors
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
"""Writes a uniform random k-CNF in DIMACS format."""

import argparse
import random
import sys


def random_kcnf(rng, n_vars, n_clauses, k):
    clauses = []
    for _ in range(n_clauses):
        vs = rng.sample(range(1, n_vars + 1), k)
        clauses.append([v if rng.random() < 0.5 else -v for v in vs])
    return clauses


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--vars", type=int, default=100)
    ap.add_argument("--clauses", type=int, default=410)
    ap.add_argument("-k", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("-o", "--output", default="-")
    args = ap.parse_args()

    rng = random.Random(args.seed)
    clauses = random_kcnf(rng, args.vars, args.clauses, args.k)
    out = sys.stdout if args.output == "-" else open(args.output, "w")
    out.write(f"c uniform random {args.k}-CNF, seed {args.seed}\n")
    out.write(f"p cnf {args.vars} {len(clauses)}\n")
    for c in clauses:
        out.write(" ".join(map(str, c)) + " 0\n")


if __name__ == "__main__":
    main()
