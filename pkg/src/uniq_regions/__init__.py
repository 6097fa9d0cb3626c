"""Exact-arithmetic feasibility engine for dispersive exponent systems.

The package decides, for rational dimension-regularity-power triples,
whether each uniqueness scenario's constraint system on Strichartz-type
exponents admits a solution.  Verdicts come with checkable evidence: a
rational witness when feasible, a violated-constraint certificate when
not.  On top of the core sit window projections for the product-estimate
shift, region maps over parameter grids, threshold enclosures and
layered SVG figures.
"""

from .constraints import (
    Constraint,
    ConstraintSystem,
    LinExpr,
    Verdict,
    check_assignment,
    con,
    const,
    fm_eliminate,
    is_feasible,
    project_interval,
    term,
)
from .exact import Bound, Interval, IntervalSet, Q, format_rational, rat
from .predicates import (
    PREDICATES,
    UndecidableAtPrecision,
    critical_boundary,
    exact_threshold,
    region_predicate,
    s0,
    simplest_in,
    verify_chain,
)
from .regions import (
    GridSpec,
    MismatchReport,
    RegionGrid,
    boundary_trace,
    compare,
    default_alpha_max,
    scan,
)
from .render import FigureSpec, LayerSpec, figure_grid, figure_spec, render_figure
from .scenarios import (
    SCENARIOS,
    ProblemParams,
    ScenarioNotApplicable,
    applicable_scenarios,
    build_scenario,
    closed_form_sigma_window,
    feasibility,
    get_scenario,
    sigma_report,
    sigma_window,
)
from .strichartz import (
    AdmissibilityMode,
    AdmissibilityReport,
    SpaceTimePair,
    admissibility,
    is_acceptable,
)

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityMode",
    "AdmissibilityReport",
    "Bound",
    "Constraint",
    "ConstraintSystem",
    "FigureSpec",
    "GridSpec",
    "Interval",
    "IntervalSet",
    "LayerSpec",
    "LinExpr",
    "MismatchReport",
    "PREDICATES",
    "ProblemParams",
    "Q",
    "RegionGrid",
    "SCENARIOS",
    "ScenarioNotApplicable",
    "SpaceTimePair",
    "UndecidableAtPrecision",
    "Verdict",
    "admissibility",
    "applicable_scenarios",
    "boundary_trace",
    "build_scenario",
    "check_assignment",
    "closed_form_sigma_window",
    "compare",
    "con",
    "const",
    "critical_boundary",
    "default_alpha_max",
    "exact_threshold",
    "feasibility",
    "figure_grid",
    "figure_spec",
    "fm_eliminate",
    "format_rational",
    "get_scenario",
    "is_acceptable",
    "is_feasible",
    "project_interval",
    "rat",
    "region_predicate",
    "render_figure",
    "s0",
    "scan",
    "sigma_report",
    "sigma_window",
    "simplest_in",
    "term",
    "verify_chain",
    "__version__",
]
