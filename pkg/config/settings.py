"""
Laboratory-wide numeric defaults
Scenario [run] values and command-line flags override the run knobs here
"""

# Assembly and scenario validation
LAB_CONFIG = {
    "min_elements": 4,
    "dnnd_margin": 1e-9,          # relative distance from L = n*pi/ell
    "breakpoint_merge_tol": 1e-9, # relative to h, node/breakpoint coincidence
    "profile_check_points": 33,   # per piece, nonnegativity check
    "matrix_dump_format": "%d %d %.17g",
}

# Time integration
EVOLVE_CONFIG = {
    "t_max": 20.0,
    "sample_every": 10,
    "balance_tol": 1e-9,          # relative to E(0), per step
}

# Resolvent sweeps and classification
SWEEP_CONFIG = {
    "samples": 64,
    "spacing": "log",
    "cap_divisor": 8.0,           # lambda_cap = pi * c_min * N / (8 L)
    "dense_below": 600,           # state dimension under which dense linear algebra is used
    "dense_eigh_below": 1300,     # displacement dofs under which symmetric pencils are solved densely
    "resonance_tol": 1e-10,
    "arpack_tol": 1e-10,
    "envelope_modes_per_bin": 2,  # least-damped eigenfrequencies evaluated per sweep bin
    "envelope_k": 6,              # eigenvalues per shift when the spectrum is too large for a dense solve
    "min_samples": 8,
    "min_decades": 1.5,
    "analytic_slope": -0.7,
    "exponential_band": 0.3,
    "polynomial_slope": 0.7,
}

# Decay-law fitting on energy traces
FIT_CONFIG = {
    "window_fraction": 0.6,
    "min_samples": 50,
    "underflow": 1e-30,
    "degenerate_tol": 1e-6,
    "crossover_segments": 5,
}

# Witness construction
WITNESS_CONFIG = {
    "modes": [4, 8, 16, 32, 64],
    "min_points": 4,
}

THREADS_ENV = "BRESSE_THREADS"
TOOL_VERSION = "1.0.0"
