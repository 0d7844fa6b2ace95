"""orbitloom: compose, analyze, and export curves made of circular motions."""

from .errors import (
    DegenerateFrameError,
    EmptyCurveError,
    EmptyInputError,
    EmptyMeshError,
    InvalidParamError,
    NonCommensurableError,
    NonPeriodicError,
    OrbitloomError,
)
from .curvecore import (
    CircularComponent,
    Curve3D,
    Polyline,
    Rational,
    TrigCurve,
    canonicalize,
    eq3,
    evaluate,
    evaluate3,
    evaluate3_many,
    evaluate_many,
    frequency_gcd,
    lift3d,
    min_speed,
    period,
    sample,
    sample3,
    second_planet,
    tricircular,
    unit_orbit,
    velocity,
    velocity_many,
)
from .symmetry import (
    SymmetryReport,
    VerifyResult,
    detect_order,
    fundamental_arc,
    rationalize,
    rationalized_curve,
    reduced_frequencies,
    verify_order,
)
from .orbits import (
    ChainLink,
    Kepler3Report,
    OrbitChain,
    PlanetRecord,
    chain_to_curve,
    ephemeris,
    ephemeris3,
    kepler3_residuals,
    load_planet_table,
    lookup,
    planet_chain,
    planet_table,
    relative_view,
)
from .artexport import (
    ArcSet,
    ColoredArc,
    TriMesh,
    partition_arcs,
    tube_sweep,
    write_csv,
    write_json,
    write_stl,
    write_svg,
)

__version__ = "0.1.0"
