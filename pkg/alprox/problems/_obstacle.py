# coding=utf-8
"""
Polyhedral obstacles
"""
import dataclasses
import typing

import numpy as np


@dataclasses.dataclass(frozen=True, eq=False)
class PolyhedralObstacle:
    """
    Polyhedron {x : C·x ≤ d} to be avoided

    The avoidance constraint is h(x) = −max_i (C·x − d)_i ≤ 0; its gradient is −C_j for the
    lowest index j reaching the maximum.
    """
    C: np.ndarray
    d: np.ndarray

    def __post_init__(self):
        normals = np.atleast_2d(np.asarray(self.C, dtype=float))
        offsets = np.asarray(self.d, dtype=float).reshape(-1)
        if normals.shape[0] == 0 or normals.size == 0:
            raise ValueError('an obstacle needs at least one half-space')
        if offsets.shape != (normals.shape[0],):
            raise ValueError(f'd has shape {offsets.shape}, expected ({normals.shape[0]},)')
        object.__setattr__(self, 'C', normals)
        object.__setattr__(self, 'd', offsets)

    @classmethod
    def box(cls, lower: typing.Sequence[float], upper: typing.Sequence[float]) -> 'PolyhedralObstacle':
        """
        Axis-aligned box lower ≤ x ≤ upper
        """
        lower, upper = np.asarray(lower, dtype=float), np.asarray(upper, dtype=float)
        if lower.shape != upper.shape or np.any(lower > upper):
            raise ValueError(f'invalid box bounds {lower} / {upper}')
        eye = np.eye(lower.size)
        return cls(np.vstack([eye, -eye]), np.concatenate([upper, -lower]))

    @property
    def nx(self) -> int:
        """State dimension"""
        return self.C.shape[1]

    def value(self, x: np.ndarray) -> float:
        """h(x); positive inside the polyhedron"""
        return -float(np.max(self.C @ x - self.d))

    def gradient(self, x: np.ndarray) -> np.ndarray:
        """Semi-smooth gradient of h, taken from the first maximizing row"""
        return -self.C[int(np.argmax(self.C @ x - self.d))]
