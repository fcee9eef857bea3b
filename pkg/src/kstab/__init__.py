"""Exact beta and alpha certificates of K-instability for log del Pezzo
hypersurfaces in weighted projective 3-space."""

from .betaflow import BetaReport, PiecewiseQuadratic, Verdict, beta, integrate, volume_curve
from .geometry import BlowupResult, CurveSystem, MonomialGerm, RDivisor, blow_up, pullback_anticanonical, validate_config
from .lctalpha import AlphaReport, BoundaryDivisor, Component, alpha_verdict, lct_ub, lct_ub_at_point
from .presets import preset, run_preset, sweep
from .surface import QuotientPoint, SurfaceSpec, antican_square, h0_count, hyperplane_square, normalize_quotient, validate
from .zariski import Decomposition, decompose, decompose_bruteforce, nef_check, volume

__version__ = "0.1.0"
