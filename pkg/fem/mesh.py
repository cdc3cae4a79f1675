"""
One-dimensional meshes on [0, L]
Uniform nodes with the damping breakpoints inserted where they miss a node
"""
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from config.settings import LAB_CONFIG, SWEEP_CONFIG
from model.params import BeamParameters, wave_speeds


@dataclass(frozen=True, eq=False)
class Mesh:
    nodes: np.ndarray
    n_elements: int      # nominal element count N of the uniform part

    @property
    def length(self) -> float:
        return float(self.nodes[-1])

    @property
    def h(self) -> float:
        """Nominal spacing L / N"""
        return self.length / self.n_elements

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def element_lengths(self) -> np.ndarray:
        return np.diff(self.nodes)

    def node_weights(self) -> np.ndarray:
        """m_i = integral of the i-th hat function; m . u is the exact integral of a P1 field"""
        he = self.element_lengths
        m = np.zeros(self.n_nodes)
        m[:-1] += 0.5 * he
        m[1:] += 0.5 * he
        return m


def build_mesh(length: float, n_elements: int, breakpoints: Iterable[float] = ()) -> Mesh:
    nodes = np.linspace(0.0, length, n_elements + 1)
    nodes[-1] = length
    h = length / n_elements
    tol = LAB_CONFIG["breakpoint_merge_tol"] * h
    extra = []
    for b in breakpoints:
        if 0.0 < b < length and np.min(np.abs(nodes - b)) > tol:
            extra.append(b)
    if extra:
        nodes = np.sort(np.concatenate([nodes, extra]))
    return Mesh(nodes, n_elements)


def resolved_frequency_cap(params: BeamParameters, n_elements: int) -> float:
    """Largest |lambda| at which N elements still represent the continuum modes"""
    return math.pi * min(wave_speeds(params)) * n_elements / (SWEEP_CONFIG["cap_divisor"] * params.length)


def default_time_step(params: BeamParameters, n_elements: int) -> float:
    """h / (2 max c_i)"""
    return params.length / n_elements / (2.0 * max(wave_speeds(params)))
