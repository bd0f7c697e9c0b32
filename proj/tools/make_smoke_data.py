#!/usr/bin/env python3
"""Writes the bundled smoke dataset: 3 planners, 2 domains, 2 levels.

Output is deterministic; rerun only to change the dataset on purpose.
"""

import json
import random
import sys
from pathlib import Path

PLANNERS = [
    # name, speed scale, chance of failing a problem
    ("alpha", 1.0, 0.05),
    ("bravo", 1.5, 0.05),
    ("charlie", 2.5, 0.05),
]
DOMAINS = ["depots", "rovers"]
LEVELS = ["strips", "time"]
PROBLEMS = 20


def main(out_dir: Path) -> None:
    rng = random.Random(2002)
    rows = ["planner,domain,level,problem,solved,time_ms,metric_value,seq_length,conc_length"]
    sets = []
    for level in LEVELS:
        for domain in DOMAINS:
            problems = [f"p{i:02d}" for i in range(1, PROBLEMS + 1)]
            sets.append({
                "domain": domain,
                "level": level,
                "size_class": "small",
                "quality_direction": "minimize",
                "problems": problems,
            })
            for name, scale, fail in PLANNERS:
                for i, problem in enumerate(problems, start=1):
                    if rng.random() < fail * i / PROBLEMS * 2:
                        rows.append(f"{name},{domain},{level},{problem},0,,,,")
                        continue
                    time_ms = int(scale * 40 * i * rng.uniform(0.6, 1.4)) + 1
                    length = 4 + i + rng.randint(0, int(scale))
                    if level == "strips":
                        conc = max(1, length // 2 + rng.randint(0, 2))
                        rows.append(f"{name},{domain},{level},{problem},1,{time_ms},,{length},{conc}")
                    else:
                        makespan = round(length * rng.uniform(8.0, 12.0), 1)
                        rows.append(f"{name},{domain},{level},{problem},1,{time_ms},{makespan},,")
    manifest = {
        "planners": [{"name": name, "category": "fully-automated", "levels": LEVELS} for name, _, _ in PLANNERS],
        "problem_sets": sets,
    }
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "smoke_runs.csv").write_text("\n".join(rows) + "\n")
    (out_dir / "smoke_manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")


if __name__ == "__main__":
    main(Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "tests" / "data")
