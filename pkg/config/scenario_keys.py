"""
Scenario file key registry
Every table and key a scenario TOML file may contain; anything else is rejected
"""

# Top-level tables and their allowed keys
SCENARIO_KEYS = {
    "beam": {
        "rho1": "mass density x area (kg/m)",
        "rho2": "mass density x second moment of area (kg m)",
        "k1": "shear stiffness (N)",
        "k2": "bending stiffness (N m^2)",
        "k3": "axial stiffness (N)",
        "ell": "inverse curvature radius (1/m)",
        "length": "beam length L (m)",
    },
    "damping": {
        "model": "kelvin_voigt | viscous",
    },
    "bc": {
        "type": "dddd | dnnd",
    },
    "run": {
        "n_elements": "mesh size (>= 4)",
        "dt": "time step (s); default h / (2 max c_i)",
        "t_max": "simulation horizon (s)",
        "sample_every": "steps between trace samples",
        "lambda_min": "lower end of the resolvent sweep (rad/s)",
        "lambda_max": "upper end of the resolvent sweep (rad/s)",
        "samples": "number of sweep samples",
        "spacing": "log | linear",
        "seed": "seed for random initial states",
        "modes": "witness mode indices (list of integers)",
    },
}

# Keys of each [damping.d1|d2|d3] sub-table
PROFILE_KEYS = {
    "kind": "zero | global | indicator | smoothstep",
    "alpha": "left end of the damped interval (m)",
    "beta": "right end of the damped interval (m)",
    "d0": "damping level on the interval",
    "ramp": "smoothstep transition width (m)",
}

# Which profile keys each kind needs
PROFILE_KIND_KEYS = {
    "zero": [],
    "global": ["d0"],
    "indicator": ["alpha", "beta", "d0"],
    "smoothstep": ["alpha", "beta", "d0", "ramp"],
}

PROFILE_NAMES = ["d1", "d2", "d3"]
DAMPING_MODELS = {"kelvin_voigt": "KelvinVoigt", "viscous": "Viscous"}
BOUNDARY_TYPES = {"dddd": "FullDirichlet", "dnnd": "DirichletNeumannNeumann"}

# Value type of each [run] key
RUN_KEY_TYPES = {
    "n_elements": "integer",
    "dt": "number",
    "t_max": "number",
    "sample_every": "integer",
    "lambda_min": "number",
    "lambda_max": "number",
    "samples": "integer",
    "spacing": "string",
    "seed": "integer",
    "modes": "list of integers",
}
