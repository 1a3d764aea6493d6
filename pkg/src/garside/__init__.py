"""Word reversing in lcm-monoids, M-braces and set-theoretic Yang-Baxter solutions."""

from .core import (
    AtomTable,
    Presentation,
    ValidationReport,
    free_reduce,
    parse_presentation,
    parse_word,
    render_presentation,
    validate,
)
from .errors import (
    BudgetExceeded,
    GarsideError,
    OutOfRange,
    ParseError,
    Stuck,
)
from .mbrace import PropertyReport, check_left_mbrace, check_right_mbrace, oplus, right_distributivity_witness
from .oracle import (
    CongruenceIndex,
    build_index,
    equal_oracle,
    garside_element,
    lcm_oracle,
    left_gcd_oracle,
    right_gcd_oracle,
    right_lcm_oracle,
)
from .partialbrace import (
    Ambiguous,
    Defined,
    FractionGroup,
    GroupElement,
    SampleSpec,
    Undefined,
    check_partial_axioms,
    group_equal,
    inv,
    mul,
    oplus_partial,
    reduce,
    witness_search,
)
from .reversing import (
    ComplementTable,
    build_complement_table,
    cube_check,
    equal_reversing,
    export_dot,
    lcm_left,
    lcm_right,
    left_reverse,
    right_reverse,
)
from .ybe import Solution, check_solution, mp_level, presentation_to_solution, retract, structure_presentation

__all__ = [name for name in dir() if not name.startswith("_")]
