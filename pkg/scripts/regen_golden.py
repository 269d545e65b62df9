"""Regenerate the frozen end-to-end fixtures under tests/golden/.

The fixtures pin the byte-level output of the synthesizer and the report
writer for one fixed configuration and seed.  Rerun this script only when
an intentional change to serialization or analysis output is made, and
review the diff before committing.
"""

from __future__ import annotations

import shutil
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from asnqual.ingest import write_applications, write_medians, write_registry
from asnqual.report import analyze_round, emit
from asnqual.synth import default_synth_config, synthesize_round

GOLDEN_SEED = 7
GOLDEN_DIR = Path(__file__).resolve().parent.parent / "tests" / "golden"


def main() -> int:
    dataset = synthesize_round(default_synth_config(), GOLDEN_SEED)
    if GOLDEN_DIR.exists():
        shutil.rmtree(GOLDEN_DIR)
    GOLDEN_DIR.mkdir(parents=True)
    write_applications(dataset.applications, GOLDEN_DIR / "applications.csv")
    write_medians(dataset.medians, GOLDEN_DIR / "medians.csv")
    write_registry(dataset.registry, GOLDEN_DIR / "registry.csv")
    report = analyze_round(dataset)
    written = emit(report, "csv", GOLDEN_DIR / "report")
    emit(report, "json", GOLDEN_DIR / "report")
    print(f"wrote 3 dataset files and {len(written) + 1} report files to {GOLDEN_DIR}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
