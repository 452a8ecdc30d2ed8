"""garnorm: quadratic normalisation tables, the Mealy transducers they
induce, and greedy normal forms for finitely presented monoids."""

from .core import (
    Alphabet,
    AlphabetError,
    AmbiguousMaximum,
    Breadth,
    BudgetExhausted,
    DEFAULT_NODE_BUDGET,
    GarnormError,
    LetterNotInAlphabet,
    MissingUnit,
    NoFactorisation,
    NormTable,
    NormalisationReport,
    NotConfluent,
    NotIdempotent,
    NotNormalising,
    NotTerminating,
    ParseError,
    PositionOutOfRange,
    Symbol,
    SweepBudgetExhausted,
    UNBOUNDED,
    UnitAlreadyPresent,
    UnknownName,
    Word,
    adjoin_unit,
    apply_sequence,
    breadth,
    check_unit_condition,
    condition_home,
    is_normal,
    max_derivation_length,
    nbar_apply,
    normalize,
    unit_condition_failures,
    verify_normalisation,
)
from .gallery import GalleryEntry, gallery, gallery_machines, gallery_tables
from .greedy import (
    FamilyClosureReport,
    FamilyElement,
    PresentedMonoid,
    bounded_equal,
    check_family_closure,
    family_unit,
    greedy_table,
    make_family,
    right_divisors,
)
from .machines import (
    ActionClassPartition,
    IterationResult,
    MealyMachine,
    action_equal,
    build_mealy,
    build_thurston,
    distinguishing_word,
    dual,
    growth,
    minimize,
    numeration_iterate,
    padding_normal_form,
    run,
    run_word,
    thurston_normalize,
    tuple_action_classes,
)

__version__ = "0.1.0"
