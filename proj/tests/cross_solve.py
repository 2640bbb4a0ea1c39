"""Solve exported LPs with HiGHS and compare objectives with the built-in simplex.

usage: cross_solve.py MWT DATA_DIR WORK_DIR
Exits 77 (skipped) when highspy is not installed.
"""

import json
import pathlib
import subprocess
import sys

try:
    import highspy
except ImportError:
    print("highspy not available, skipping")
    sys.exit(77)


def highs_objective(lp_path):
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.readModel(str(lp_path))
    h.run()
    if h.getModelStatus() != highspy.HighsModelStatus.kOptimal:
        raise RuntimeError(f"HiGHS did not solve {lp_path}")
    return h.getInfo().objective_function_value


def main():
    mwt, data, work = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
    work.mkdir(parents=True, exist_ok=True)
    cases = [data / name for name in ("square.pts", "tri_center.pts", "hexagon.pts", "circle13.pts", "random40.pts")]
    for seed in range(5):
        path = work / f"gen{seed}.pts"
        path.write_text(subprocess.run([mwt, "generate", "-n", "25", "--seed", str(100 + seed)],
                                       check=True, capture_output=True, text=True).stdout)
        cases.append(path)

    failures = 0
    for case in cases:
        for extra in ([], ["--no-ledger"]):
            lp_path = work / (case.stem + ("_full" if extra else "") + ".lp")
            out = subprocess.run([mwt, "lp", str(case), "--export-lp", str(lp_path), "--json", "-", *extra],
                                 capture_output=True, text=True)
            if out.returncode not in (0, 2):
                print(f"{case.name}: mwt exited {out.returncode}")
                failures += 1
                continue
            ours = json.loads(out.stdout)["lp"]["objective"]
            theirs = highs_objective(lp_path)
            ok = abs(ours - theirs) <= 1e-6 * max(1.0, abs(theirs))
            failures += not ok
            print(f"{case.name:>16} {'full' if extra else 'ledger':>6}  ours {ours:.9f}  highs {theirs:.9f}  "
                  f"{'ok' if ok else 'MISMATCH'}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
