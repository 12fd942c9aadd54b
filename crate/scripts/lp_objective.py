#!/usr/bin/env python3
"""Solve an LP-format model with HiGHS and print its optimal objective.

Usage: lp_objective.py MODEL.lp

Exit status is 0 when an optimum was found, 2 otherwise.
"""
import sys

import highspy


def main() -> int:
    if len(sys.argv) != 2:
        print(__doc__.strip(), file=sys.stderr)
        return 1
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    if h.readModel(sys.argv[1]) == highspy.HighsStatus.kError:
        print("cannot read model", file=sys.stderr)
        return 1
    h.run()
    status = h.getModelStatus()
    if status != highspy.HighsModelStatus.kOptimal:
        print(h.modelStatusToString(status), file=sys.stderr)
        return 2
    print(round(h.getInfo().objective_function_value))
    return 0


if __name__ == "__main__":
    sys.exit(main())
