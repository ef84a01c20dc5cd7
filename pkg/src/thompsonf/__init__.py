"""A one-counter graph automatic structure for Thompson's group F."""
from .group import (
    IDENTITY,
    X0,
    X0_INV,
    X1,
    X1_INV,
    GeneratorLetter,
    NormalForm,
    burillo_D,
    geodesic_length_bfs,
    invert,
    multiply,
    nf_to_word,
    parse_word,
    reduce,
)
from .encoding import convolve, decode, deconvolve, encode, is_linf_valid
from .structure import (
    linf_fsa,
    linf_pair_fsa,
    multiplier_accepts,
    multiplier_apply,
    word_to_normal_form,
)

__version__ = "0.1.0"
