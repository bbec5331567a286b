"""Kronecker-coproduct bialgebra of UHF algebras at finite truncation level."""

from .bialgebra import (
    ComponentFamily,
    InfMatrixUnit,
    TensorElement,
    coaction_infty,
    cocommutativity_witness,
    coproduct_phi,
    counit,
    delta,
    join_index,
    split_index,
    verify_cancellation,
    verify_coaction,
    verify_coassoc,
    verify_counit,
    verify_noncocommutative,
    verify_padding,
    verify_star_isomorphism,
)
from .matalg import is_density, kron, matrix_unit, span_rank
from .report import Report
from .repstate import (
    AtomClass,
    GNSRep,
    ProductState,
    atom_equiv,
    atom_product,
    atom_state,
    boxtimes_states,
    center_dimension,
    commutant_dimension,
    gns,
    intertwiner_check,
    rep_tensor,
    state_eval,
    state_tensor,
)
from .sequences import EvPeriodicSeq, FactorPair, SequencePrefix, enumerate_factorizations, seq_product, star, tail_equiv
from .uhf import AlgebraElement, DirectSumElement, embed_level, multiply, unit_elem
from .verify import RunConfig

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
