from .vectors import INF, Vec, vec, vadd, vsub, vscale, concat, dot, sqnorm, fmt_q, parse_q
from .boxes import Box
from .balls import OpenBall, ball_subset, balls_disjoint, lens_subset_ball, Verdict
from .cones import AlCone
from .polyhedra import HPolyhedron, Row, row_cap_scope
from .bands import BandStack
from .affine import AffineDiagMap

__all__ = [
    "INF", "Vec", "vec", "vadd", "vsub", "vscale", "concat", "dot", "sqnorm", "fmt_q", "parse_q",
    "Box", "OpenBall", "ball_subset", "balls_disjoint", "lens_subset_ball", "Verdict",
    "AlCone", "HPolyhedron", "Row", "row_cap_scope", "BandStack", "AffineDiagMap",
]
