import os
from enum import StrEnum

from dotenv import load_dotenv

load_dotenv(override=False)


class Command(StrEnum):
    SOLVE = "solve"
    SWEEP = "sweep"
    NEUTRAL = "neutral"
    MODES = "modes"
    VALIDATE = "validate"


class SolverPath(StrEnum):
    """Eigenvalue paths for the discrete pressure-Poisson problem"""

    SCHUR_QR = "schur-qr"  # pressure eliminated, S_h^-1 E solved by QR
    COUPLED_QZ = "coupled-qz"  # full velocity/pressure block pencil solved by QZ


class WallDatum(StrEnum):
    """Wall Neumann datum of the pressure equation, p' = Re^-1 v''"""

    CONTINUITY = "continuity"  # v'' = -i alpha u' at the wall
    SECOND_DERIVATIVE = "second-derivative"  # v'' taken from the element shape functions


class ProfileName(StrEnum):
    POISEUILLE = "poiseuille"
    COUETTE = "couette"
    TABULATED = "tabulated"


# Discretization defaults
DEFAULT_CHANNEL_HEIGHT = float(os.getenv("DEFAULT_CHANNEL_HEIGHT", "2.0"))
DEFAULT_GRADING_EXPONENT = float(os.getenv("DEFAULT_GRADING_EXPONENT", "1.0"))
DEFAULT_QUAD_POINTS = int(os.getenv("DEFAULT_QUAD_POINTS", "5"))
DEFAULT_SOLVER_PATH = SolverPath(os.getenv("DEFAULT_SOLVER_PATH", SolverPath.SCHUR_QR))
DEFAULT_WALL_DATUM = WallDatum(os.getenv("DEFAULT_WALL_DATUM", WallDatum.CONTINUITY))

# Mode hygiene
DEFAULT_RESIDUAL_TOL = float(os.getenv("DEFAULT_RESIDUAL_TOL", "1e-6"))
DEFAULT_CR_MARGIN = float(os.getenv("DEFAULT_CR_MARGIN", "0.5"))
DEFAULT_MAX_DIVERGENCE_RATIO = float(os.getenv("DEFAULT_MAX_DIVERGENCE_RATIO", "0.5"))
MODE_SAMPLE_POINTS = 401  # uniform samples used for normalization and mode files

# Sweeps and neutral curves
DEFAULT_TOL_NEUTRAL = float(os.getenv("DEFAULT_TOL_NEUTRAL", "1e-6"))
DEFAULT_PRESCAN_POINTS = int(os.getenv("DEFAULT_PRESCAN_POINTS", "16"))
DEFAULT_MAX_BISECTIONS = int(os.getenv("DEFAULT_MAX_BISECTIONS", "60"))
DEFAULT_TRACKING_JUMP = float(os.getenv("DEFAULT_TRACKING_JUMP", "0.1"))
DEFAULT_SWEEP_WORKERS = int(os.getenv("DEFAULT_SWEEP_WORKERS", str(os.cpu_count() or 1)))
DEFAULT_SWEEP_MAX_MODES = int(os.getenv("DEFAULT_SWEEP_MAX_MODES", "64"))

# Collocation oracle
DEFAULT_ORACLE_MODES = int(os.getenv("DEFAULT_ORACLE_MODES", "96"))
ORACLE_CONVERGENCE_STEP = 16
ORACLE_CONVERGENCE_TOL = 1e-8

# Output
DEFAULT_OUT_DIR = os.getenv("DEFAULT_OUT_DIR", "results")
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
