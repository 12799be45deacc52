"""End-to-end benchmark pipeline through the library API.

Generates a small benchmark, runs the three built-in methods, scores them
against the latent graphs, and prints the aggregate table (shaped like the
CLI's `bench report` output). Equivalent shell session:

    bench generate --n 20 --seed 11 --out bench/
    bench run --bench bench/ --methods screeb,screebtower,mapper --out run/
    bench evaluate --bench bench/ --run run/ --out results/
    bench report --results results/
"""

import tempfile
from pathlib import Path

from screeb.harness import RunConfig, cmd_evaluate, cmd_generate, cmd_report, cmd_run


def main():
    with tempfile.TemporaryDirectory() as tmp:
        bench = Path(tmp) / "bench"
        run = Path(tmp) / "run"
        results = Path(tmp) / "results"

        print("generating 20 samples...")
        cmd_generate(None, 20, 11, str(bench))

        print("running screeb, screebtower, mapper...")
        cmd_run(
            RunConfig(
                bench_dir=str(bench),
                methods=("screeb", "screebtower", "mapper"),
                out_dir=str(run),
            )
        )

        print("scoring against latent graphs...\n")
        cmd_evaluate(str(bench), str(run), str(results))
        cmd_report(str(results))
        print("\nper-sample scatter data:", results / "stratified.csv")


if __name__ == "__main__":
    main()
