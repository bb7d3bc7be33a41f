"""Wavefronts, vacuum points and shoulders of the 1-D shallow water equations.

Modules: ``bathymetry`` (polynomial bottoms and scaling), ``elliptic``
(Carlson integrals), ``selfsim`` (parabolic exact solutions), ``hierarchy``
(front series expansions), ``shoulder`` (simple-wave charts), ``refsolver``
(finite-volume oracle) and ``cli``.
"""

__version__ = "0.1.0"
