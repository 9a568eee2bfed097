#  Copyright (c) torichow authors 2026-10-18.

import json
from math import atan2
from pathlib import Path
from typing import Tuple

from torichow.adapters.json import StackyFanAdapter
from torichow.stacky import StackyFan
from torichow.utils.fgab import FgAbGroup


def data_path(name: str) -> Path:
    return Path(__file__).parent / "data" / name


def read_data_file(name: str) -> dict:
    print(f"Reading data from '{name}'")
    return json.loads(data_path(name).read_text(encoding="utf-8"))


def read_stacky_fan(name: str) -> StackyFan:
    return StackyFanAdapter().decode(read_data_file(name))


def random_plane_fan(
    rng, torsion: Tuple[int, ...] = (2,), bound: int = 3
) -> StackyFan:
    """A complete fan in ``ℤ² ⊕ torsion`` whose rays generate the torsion."""
    group = FgAbGroup(2, torsion)
    while True:
        count = int(rng.integers(3, 5))
        rays = [tuple(int(v) for v in rng.integers(-bound, bound + 1, size=2)) for _ in range(count)]
        order = sorted(range(count), key=lambda i: atan2(rays[i][1], rays[i][0]))
        pairs = [(order[k], order[(k + 1) % count]) for k in range(count)]
        # consecutive rays turn left by less than a half turn
        if any(rays[a][0] * rays[b][1] - rays[a][1] * rays[b][0] <= 0 for a, b in pairs):
            continue
        parts = [[int(rng.integers(0, m)) for m in torsion] for _ in range(count)]
        sf = StackyFan.from_rays(
            group,
            [list(ray) + part for ray, part in zip(rays, parts)],
            [sorted(pair) for pair in pairs],
            name="random plane",
        )
        if sf.validate().ok and sf.validate().torsion_generated:
            return sf
