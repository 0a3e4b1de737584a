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
"""Solve an LP-format model with HiGHS and write a robnet solution file.

Usage: highs_lp_solve.py MODEL.lp SOLUTION.txt

Used through the `external:` LP backend, e.g.
  robnet solve --backend "external:python3 tools/highs_lp_solve.py" ...
"""
import sys

import highspy


def main() -> int:
    model_path, out_path = sys.argv[1], sys.argv[2]
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    if h.readModel(model_path) != highspy.HighsStatus.kOk:
        return 1
    h.run()
    status = h.getModelStatus()
    with open(out_path, "w") as out:
        if status == highspy.HighsModelStatus.kOptimal:
            out.write("status optimal\n")
            out.write("objective %r\n" % h.getInfo().objective_function_value)
            lp = h.getLp()
            values = h.getSolution().col_value
            for name, value in zip(lp.col_names_, values):
                out.write("%s %r\n" % (name, value))
        elif status == highspy.HighsModelStatus.kInfeasible:
            out.write("status infeasible\n")
        elif status in (highspy.HighsModelStatus.kUnbounded,
                        highspy.HighsModelStatus.kUnboundedOrInfeasible):
            out.write("status unbounded\n")
        else:
            return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
