"""Visibly pushdown transducers and hedge-to-string transducers.

Models are built from their text format (``Vpt(text)``, ``H2s(text)``) or
loaded with ``load_model``. Words are space-separated symbols, hedges use
term syntax such as ``"f(a b) c"``.
"""

from ._vptk import (
    AlphabetError,
    Error,
    H2s,
    ModelError,
    OutputLimitError,
    ParseError,
    PreconditionError,
    ShapeError,
    Verdict,
    Vpt,
    WitnessRow,
    builtin,
    enum_hedges,
    equiv,
    fcns,
    fcns_inv_word,
    fcns_word,
    h2b_to_h2h,
    h2s_to_vpt_fcns,
    h2s_tr_to_vpt,
    hedge_of,
    lin,
    load_model,
    parse_model,
    random_h2s,
    random_vpt,
    separation_witness,
    vpt_fcns_to_h2s,
    vpt_to_h2s_tr,
)

__all__ = [
    "AlphabetError",
    "Error",
    "H2s",
    "ModelError",
    "OutputLimitError",
    "ParseError",
    "PreconditionError",
    "ShapeError",
    "Verdict",
    "Vpt",
    "WitnessRow",
    "builtin",
    "enum_hedges",
    "equiv",
    "fcns",
    "fcns_inv_word",
    "fcns_word",
    "h2b_to_h2h",
    "h2s_to_vpt_fcns",
    "h2s_tr_to_vpt",
    "hedge_of",
    "lin",
    "load_model",
    "parse_model",
    "random_h2s",
    "random_vpt",
    "separation_witness",
    "vpt_fcns_to_h2s",
    "vpt_to_h2s_tr",
]
