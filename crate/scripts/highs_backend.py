#!/usr/bin/env python3
"""Solve an LP-format model with HiGHS and write a plain solution file.

Usage: highs_backend.py MODEL SOLUTION [--start FILE] [--time-limit SECONDS]

The solution file starts with `status optimal|infeasible|other` followed by
one `name value` line per column.
"""

import argparse
import sys

import highspy


def read_start(path):
    values = {}
    with open(path) as f:
        for line in f:
            parts = line.split()
            if len(parts) == 2:
                values[parts[0]] = float(parts[1])
    return values


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("model")
    parser.add_argument("solution")
    parser.add_argument("--start")
    parser.add_argument("--time-limit", type=float)
    args = parser.parse_args()

    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.setOptionValue("mip_rel_gap", 0.0)
    h.setOptionValue("mip_abs_gap", 0.0)
    h.setOptionValue("mip_feasibility_tolerance", 1e-9)
    h.setOptionValue("primal_feasibility_tolerance", 1e-9)
    if args.time_limit is not None:
        h.setOptionValue("time_limit", args.time_limit)
    if h.readModel(args.model) == highspy.HighsStatus.kError:
        print(f"cannot read {args.model}", file=sys.stderr)
        return 2
    names = list(h.getLp().col_names_)
    if args.start:
        start = read_start(args.start)
        if all(n in start for n in names):
            sol = highspy.HighsSolution()
            sol.col_value = [start[n] for n in names]
            sol.value_valid = True
            h.setSolution(sol)
    h.run()
    status = h.getModelStatus()
    if status == highspy.HighsModelStatus.kOptimal:
        word = "optimal"
    elif status == highspy.HighsModelStatus.kInfeasible:
        word = "infeasible"
    else:
        word = "other"
    with open(args.solution, "w") as out:
        out.write(f"status {word}\n")
        if word == "optimal":
            for name, value in zip(names, h.getSolution().col_value):
                out.write(f"{name} {value!r}\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
