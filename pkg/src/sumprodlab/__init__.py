"""sumprodlab: an exact-arithmetic workbench for sum-product combinatorics.

Everything computes over arbitrary-precision rationals or prime fields;
no floating point touches a computational path.  The main entry points:

* :mod:`sumprodlab.sets`      set algebra (sumsets, products, ratios, ...)
* :mod:`sumprodlab.energy`    additive/multiplicative energies and oracles
* :mod:`sumprodlab.graph`     containment graphs and (L, K) profiles
* :mod:`sumprodlab.popdiff`   popular ratios, identities, quadruple floors
* :mod:`sumprodlab.incidence` collinear triples and dyadic line tables
* :mod:`sumprodlab.solvers`   minimum-basis and decomposition searches
* :mod:`sumprodlab.verify`    the claim suite feeding the CLI and reports
"""

from .field import CeilingExceeded, ModeMismatchError, Residue, is_prime
from .sets import (
    ArithSet,
    aa_over_a,
    difference_set,
    dilate,
    multiplicative_doubling,
    negate,
    normalize,
    product_set,
    ratio_set,
    read_set_file,
    sumset,
    translate,
    write_set_file,
)
from .energy import (
    additive_energy,
    multiplicative_energy,
    representation_function,
    shift_intersection,
    sigma,
)
from .graph import build_containment_graph, gowers_extract, lk_profile, rich_pairs
from .incidence import collinear_triples, dyadic_table, sextuple_collinearity_count
from .popdiff import build_popular_ratios, build_ratio_sets, quadruple_energy_bound
from .solvers import decompose, min_basis
from .families import FamilySpec, generate
from .verify import exponent_ledger, run_claim

__version__ = "0.1.0"

__all__ = [
    "ArithSet",
    "CeilingExceeded",
    "FamilySpec",
    "ModeMismatchError",
    "Residue",
    "aa_over_a",
    "additive_energy",
    "build_containment_graph",
    "build_popular_ratios",
    "build_ratio_sets",
    "collinear_triples",
    "decompose",
    "difference_set",
    "dilate",
    "dyadic_table",
    "exponent_ledger",
    "generate",
    "gowers_extract",
    "is_prime",
    "lk_profile",
    "min_basis",
    "multiplicative_doubling",
    "multiplicative_energy",
    "negate",
    "normalize",
    "product_set",
    "quadruple_energy_bound",
    "ratio_set",
    "read_set_file",
    "representation_function",
    "rich_pairs",
    "run_claim",
    "sextuple_collinearity_count",
    "shift_intersection",
    "sigma",
    "sumset",
    "translate",
    "write_set_file",
]
