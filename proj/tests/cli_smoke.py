"""End-to-end exercise of the gab-lab binary: gen -> run -> render -> tree."""

import json
import os
import subprocess
import sys
import tempfile


def run(args, **kw):
    proc = subprocess.run(args, capture_output=True, text=True, **kw)
    if proc.returncode != 0:
        print(f"[FAIL] {' '.join(args)}\n{proc.stdout}\n{proc.stderr}")
        sys.exit(1)
    return proc


def main():
    binary = os.environ["GAB_LAB_BIN"]
    with tempfile.TemporaryDirectory() as tmp:
        seq = os.path.join(tmp, "seq.txt")
        run([binary, "gen", "--kind", "ws_local", "--n", "32", "--m", "64",
             "--seed", "9", "--out", seq])
        header = open(seq).readline().split()
        assert header == ["32", "64"], header
        print("[PASS] gen writes the sequence header")

        cfg = {
            "n": 32, "m": 64,
            "sequence_file": seq,
            "tree": {"kind": "skipsplay", "delta": 2},
            "scheme": {"kind": "working_set_squared"},
            "out": {
                "report_csv": os.path.join(tmp, "report.csv"),
                "points_csv": os.path.join(tmp, "points.csv"),
                "touches_csv": os.path.join(tmp, "touches.csv"),
            },
        }
        cfg_path = os.path.join(tmp, "exp.json")
        with open(cfg_path, "w") as f:
            json.dump(cfg, f)
        run([binary, "run", "--config", cfg_path])
        report = open(cfg["out"]["report_csv"]).read().splitlines()
        assert report[1].startswith("sequence_id,n,m,k,wilber1,fk_exact,fk_heur,ub,ubk,"
                                    "greedy_cost,ggreedy_cost,gab_cost"), report[1]
        row = report[2].split(",")
        assert row[1] == "32" and row[2] == "64", row
        print("[PASS] run emits the report CSV")

        svg = os.path.join(tmp, "points.svg")
        run([binary, "render", "--points", cfg["out"]["points_csv"], "--out", svg])
        assert "<svg" in open(svg).read()
        print("[PASS] render produces SVG")

        tree = run([binary, "tree", "--kind", "regular", "--n", "10",
                    "--branching", "4"]).stdout
        parsed = json.loads(tree)
        assert parsed["lo"] == 1 and parsed["hi"] == 10
        assert [c["hi"] - c["lo"] + 1 for c in parsed["children"]] == [3, 3, 2, 2]
        print("[PASS] tree prints the partition JSON")

        verify = run([binary, "verify", "--suite", "star", "--quick"]).stdout
        assert "[PASS] star" in verify
        print("[PASS] verify runs a suite")

    print("cli smoke: all checks passed")


if __name__ == "__main__":
    main()
