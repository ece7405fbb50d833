from __future__ import annotations

import math
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
import pandas as pd
from scipy import special

from lab_common.errors import DomainError, InvalidParameterError
from lab_common.outputs import RunManifest, command_dir, write_csv, write_json

from .cft import cft_constants
from .fields import prob_field
from .integrals import PI, F

DEFAULT_GRID = "-4:4:17,0:3.14159265358979:9"


def parse_grid(spec: str) -> tuple[np.ndarray, np.ndarray]:
    """'xmin:xmax:nx,ymin:ymax:ny' -> (xs, ys)."""
    try:
        xpart, ypart = spec.split(",")
        x0, x1, nx = xpart.split(":")
        y0, y1, ny = ypart.split(":")
        xs = np.linspace(float(x0), float(x1), int(nx))
        ys = np.linspace(float(y0), float(y1), int(ny))
    except ValueError as exc:
        raise InvalidParameterError(f"grid must look like 'xmin:xmax:nx,ymin:ymax:ny' (got {spec!r})") from exc
    if xs.size < 1 or ys.size < 1:
        raise InvalidParameterError(f"grid needs at least one point per axis (got {spec!r})")
    if ys.min() < 0 or ys.max() > PI + 1e-9:
        raise DomainError(f"grid heights must lie in [0, pi] (got {ys.min()}..{ys.max()})")
    return xs, np.minimum(ys, PI)


def field_table(kappa: float, xs: np.ndarray, ys: np.ndarray) -> pd.DataFrame:
    pf = prob_field(kappa)
    rows = []
    for y in ys:
        for x in xs:
            z = complex(x, y)
            if z == 0:
                rows.append({"re": x, "im": y, "p_left": math.nan, "p_right": math.nan, "p_in": math.nan})
                continue
            rows.append({"re": x, "im": y, "p_left": pf.p_left(z), "p_right": pf.p_right(z), "p_in": pf.p_in(z)})
    return pd.DataFrame(rows, columns=["re", "im", "p_left", "p_right", "p_in"])


def constants_payload(kappa: float) -> dict:
    pf = prob_field(kappa)
    a = 2.0 / kappa
    cft = cft_constants(kappa)
    payload = {
        "kappa": kappa,
        "I": pf.I,
        "I_beta": 2.0 ** (2 * a) * special.beta(a, a),
        "F_plus_inf": _pair(F(complex(math.inf, 0.0), kappa)),
        "c": cft.c,
        "h12": cft.h12,
        "h0half": cft.h0half,
    }
    if kappa > 4:
        payload["J"] = pf.J
        payload["F_origin"] = _pair(F(0j, kappa))
    return payload


def _pair(w: complex) -> list[float]:
    return [w.real, w.imag]


def cmd_field(kappa: float, grid: str = DEFAULT_GRID, out: Optional[Path] = None) -> int:
    """Tabulate p_left / p_right / p_in on a grid of the closed strip; NaN at the origin."""
    if not (math.isfinite(kappa) and kappa > 0):
        raise InvalidParameterError(f"kappa must be > 0 (got {kappa})")
    xs, ys = parse_grid(grid)
    out_dir = command_dir("field", out)
    print(f"[field] kappa={kappa} points={xs.size * ys.size}")

    table = field_table(kappa, xs, ys)
    manifest = RunManifest(command="field", config={"kappa": kappa, "grid": grid}, seed=0)
    manifest.outputs.append(str(write_csv(table, out_dir / "field.csv")))
    manifest.outputs.append(str(write_json(constants_payload(kappa), out_dir / "constants.json")))
    manifest.write(out_dir)
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    from dipolar_cli.cli import main as cli_main

    return cli_main(argv, commands=("field",), prog="python -m analytic_prob")
