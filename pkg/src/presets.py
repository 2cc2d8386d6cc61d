"""
Named seed triangles. Seeds are returned normalized: circumcenter at the origin, circumradius 1.
"""

import numpy as np

from src.structures.triangle import Triangle

SEED_PRESETS = {
    "scalene-A": ((0.0, 0.0), (4.0, 0.0), (1.2, 2.7)),
    "scalene-B": ((0.0, 0.0), (5.0, 0.0), (2.0, 3.5)),
    "equilateral": ((0.0, 0.0), (1.0, 0.0), (0.5, np.sqrt(3.0) / 2.0)),
    "right-3-4-5": ((0.0, 0.0), (4.0, 0.0), (0.0, 3.0)),
}

# barycentric perspector of the generic circle-inscribed caustic
GENERIC_PERSPECTOR = (0.9, 1.3, 1.1)


def seed_names():
    return sorted(SEED_PRESETS)


def raw_seed_triangle(name: str) -> Triangle:
    if name not in SEED_PRESETS:
        raise ValueError(f"Undefined seed preset for: {name!r}")
    return Triangle(*SEED_PRESETS[name])


def seed_triangle(name: str) -> Triangle:
    return raw_seed_triangle(name).normalized()
