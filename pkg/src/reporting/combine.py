from __future__ import annotations

import json
from pathlib import Path

import pandas as pd


def combine_outputs(inputs: dict[str, Path], out_path: Path) -> pd.DataFrame:
    """
    Stack per-command comparison reports into one table with a source_module column.

    Each input is either a report.json (one row) or a CSV of rows such as
    ising_scaling/deltas.csv. Missing or empty inputs are skipped.
    """
    frames = []
    for source_module, path in inputs.items():
        path = Path(path)
        if not path.exists():
            continue
        if path.suffix == ".json":
            df = pd.DataFrame([json.loads(path.read_text(encoding="utf-8"))])
        else:
            df = pd.read_csv(path)
        if df.empty:
            continue
        df.insert(0, "source_module", source_module)
        frames.append(df)

    combined = pd.concat(frames, ignore_index=True) if frames else pd.DataFrame(columns=["source_module"])
    out_path.parent.mkdir(parents=True, exist_ok=True)
    combined.to_csv(out_path, index=False)
    print(f"Wrote: {out_path}")
    return combined
