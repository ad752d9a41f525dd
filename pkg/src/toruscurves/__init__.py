"""Exact arithmetic for curves on the torus.

Slopes and intersection numbers, triangulations of the n-gon with their
dual trees and Farey labellings, the branch-counting machinery behind
lower bounds on the maximal intersection, coprime-graph combinatorics,
and the Ford-circle geometry of the upper half-plane.
"""

from .farey import (
    INFINITY,
    ONE,
    ZERO,
    Slope,
    TurnSequence,
    UnimodularMap,
    apply_map,
    continuant,
    iota,
    is_farey_edge,
    mediant,
    parse_slope,
    reduce,
)
from .triangulation import (
    FareyLabelling,
    Triangulation,
    enumerate_triangulations,
    farey_labelling,
    flip,
    intersection_via_labels,
    intersection_via_tree,
    triangulation_from_slopes,
    turn_sequence,
)
from .families import FamilySpec, generate
from .ksystem import (
    agol_bound,
    branch_profile,
    accounting_check,
    convex_estimate,
    cross_intersection,
    eta,
    height,
    invert_bound,
    kappa,
    kappa_min,
    saturate,
    width,
)
from .numtheory import (
    coprime_count,
    gamma_graph,
    mobius,
    ndivisors,
    nextprime,
    partial_sums,
    totient,
)
from .hyperbolic import (
    Geodesic,
    Point,
    covering_check,
    cutting_sequence,
    ford_circle,
    geodesic_midpoint,
    geometric_horoball,
    horoball_distance,
    point_horoball_distance,
)

__version__ = "0.1.0"
