"""Cayley hashing with A(k) = (1,k;0,1), B(k) = (1,0;k,1) over F_p, plus girth
bounds and the lifting attack on the group generated by A(2), B(2)."""

from cayleyhash.algebra import (
    Mat2,
    generator,
    generator_power,
    mat_mul,
    sanov_form_check,
    sl2_inverse,
)
from cayleyhash.girth import (
    GirthReport,
    alternation_extremality_check,
    bfs_exact_girth,
    closed_form_estimate,
    cn_matrix,
    girth_lower_bound,
    max_entry_at_length,
)
from cayleyhash.hasher import (
    Digest,
    HashParams,
    HashState,
    digest_decode,
    digest_encode,
    hash_bits,
    hash_bytes,
)
from cayleyhash.lifting import (
    IdentityLift,
    Relation,
    build_group_relation,
    euclidean_factor,
    find_identity_lift,
    paper_pipeline,
    rewrite_a1b1_to_a2b2,
    sanov_correction,
    sanov_reduce,
    verify_relation,
)
from cayleyhash.words import GenWord, evaluate_word, format_word, parse_word

__version__ = "0.1.0"
