"""Seeded instance generation, file formats, and certificate checking.

The generator plants either a strictly feasible direction (margin 0.1)
or a vanishing positive combination, and hands back the certificate it
planted.  Certificates are plain JSON and can be re-checked long after
the solve, by this package or by twenty lines of independent code.
"""

import json
from pathlib import Path
from tempfile import TemporaryDirectory

from prfeas import generate_planted, verify_d_solution, verify_p_certificate
from prfeas.cli import main as cli

# Plant a feasible direction in a random second order cone instance and
# check it: the verifier re-queries the oracle and reports the margin.
inst, cert = generate_planted("socp", m=3, n=7, seed=2024,
                              target="feasible_d")
report = verify_d_solution(inst, cert.y)
print("planted direction accepted:", report.accepted)
print("  worst block margin:", report.residual)

# Plant the opposite outcome: weights on at most m+1 constraint columns
# that cancel exactly.  The residual below is relative to the weight mass.
inst, cert = generate_planted("sdp", m=3, n=4, seed=2024,
                              target="feasible_p")
report = verify_p_certificate(inst, cert.weights)
print("planted combination accepted:", report.accepted)
print("  relative residual:", report.residual)

# The same workflow through the command line, files in, files out.
with TemporaryDirectory() as tmp:
    problem = str(Path(tmp) / "problem.json")
    planted = str(Path(tmp) / "planted_cert.json")
    solved = str(Path(tmp) / "solved_cert.json")

    cli(["generate", "--kind", "lp", "--m", "3", "--n", "10",
         "--seed", "7", "--output", problem, "--certificate", planted])

    code = cli(["solve", "--input", problem, "--epsilon", "1e-6",
                "--certificate", solved])
    print("solve exit code:", code)  # 0 feasible, 1 dual, 2 declared

    code = cli(["verify", "--input", problem, "--certificate", solved])
    print("verify exit code:", code)

    print("stored certificate:",
          json.loads(Path(solved).read_text())["kind"])
