"""
Energy traces: sampled (t, E, D) series produced by a simulation
"""
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List

import numpy as np

from utils.csv_writers import write_csv


@dataclass(frozen=True, eq=False)
class EnergyTrace:
    times: np.ndarray
    energies: np.ndarray
    dissipations: np.ndarray
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if not (len(self.times) == len(self.energies) == len(self.dissipations)):
            raise ValueError("trace columns differ in length")
        if len(self.times) > 1 and not np.all(np.diff(self.times) > 0):
            raise ValueError("trace times must be strictly increasing")

    def __len__(self) -> int:
        return len(self.times)

    def rows(self) -> List[List[float]]:
        return [[float(t), float(e), float(d)] for t, e, d in zip(self.times, self.energies, self.dissipations)]

    def to_csv(self, path: str, comments: Iterable[str] = ()) -> None:
        write_csv(path, ["t", "energy", "dissipation"], self.rows(), comments)
