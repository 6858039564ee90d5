"""
Driving the same computations from the command line
===================================================

Each subcommand writes JSON by default or CSV with --format csv. The exit
code is 3 when a checked invariant fails.
"""

from sunconj.cli import run

run(["chain", "--c-rom", "1.9967", "--paper-rounding", "--format", "csv"])
run(["equidist", "--p", "7", "--k", "100", "--k", "400", "--format", "csv"])
code = run(["verify-sun", "--lo", "2", "--hi", "100", "--k-cap", "8"])
print("exit code with a small k-cap:", code)
