"""
Coordinate-format matrix dumps (row col value per line) for external cross-checking
"""
import os
from typing import Dict, Optional

import numpy as np

from config.settings import LAB_CONFIG
from .assembly import DiscreteOperator


def dump_matrices(op: DiscreteOperator, out_dir: str, manifest: Optional[str] = None) -> Dict[str, str]:
    """Write M, K, C, G as <name>.coo.txt; returns name -> path"""
    os.makedirs(out_dir, exist_ok=True)
    paths = {}
    for name, matrix in (("M", op.M), ("K", op.K), ("C", op.C), ("G", op.G)):
        coo = matrix.tocoo()
        order = np.lexsort((coo.col, coo.row))
        path = os.path.join(out_dir, f"{name}.coo.txt")
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(f"# {name} {matrix.shape[0]} {matrix.shape[1]} {coo.nnz}\n")
            for k in order:
                handle.write(LAB_CONFIG["matrix_dump_format"] % (coo.row[k], coo.col[k], coo.data[k]) + "\n")
            if manifest:
                handle.write(f"# manifest={manifest}\n")
        paths[name] = path
    return paths
