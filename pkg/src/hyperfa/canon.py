"""Canonical forms for alternation-free acceptors.

A universal acceptor is sequence-complete when acceptance of a zip encoding
implies acceptance of every track selection of it; an existential acceptor
is permutation-complete when acceptance of any track reordering implies
acceptance of the word itself.  Complete acceptors can be compared by
looking at underlying word languages only.

Raw underlying languages still differ in two inessential ways: trailing
all-pad letters and words that are not zip encodings at all.  The
equality test therefore compares closures intersected with the encoding
filter; completeness checks are likewise restricted to encodings.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .errors import PreconditionViolated, ResourceLimit, WrongFragment
from .fa import Fa
from .hfa import (
    Fragment,
    Nfh,
    pad_normalize,
    sequence_remap,
    zip_filter_fa,
)
from .zipwords import IndexSequence, ZipWord, all_letters

DEFAULT_CLOSURE_MAX_K = 3


@dataclass(frozen=True)
class CompletenessReport:
    complete: bool
    counterexample: Optional[tuple[ZipWord, IndexSequence]]


def _require_cap(k: int, max_k: int) -> None:
    if k > max_k:
        raise ResourceLimit(f"arity {k} exceeds the closure cap of {max_k}")


def _all_sequences(k: int):
    return itertools.product(range(1, k + 1), repeat=k)


def _closure_fa(nfh: Nfh, seqs, combine_union: bool) -> Fa:
    alphabet = nfh.underlying.alphabet
    base = pad_normalize(nfh.underlying, nfh.k)
    result: Optional[Fa] = None
    for seq in seqs:
        piece = sequence_remap(base, seq, alphabet)
        if result is None:
            result = piece
        elif combine_union:
            result = result.union(piece).determinize().minimize()
        else:
            result = result.intersect(piece).determinize().minimize()
    assert result is not None
    return result


def sequence_closure(nfh: Nfh, max_k: int = DEFAULT_CLOSURE_MAX_K) -> Nfh:
    """Intersection over all k^k track selections; hyperlanguage unchanged."""
    if nfh.fragment is not Fragment.FORALL_ONLY:
        raise WrongFragment("sequence closure applies to universal acceptors")
    _require_cap(nfh.k, max_k)
    closed = _closure_fa(nfh, _all_sequences(nfh.k), combine_union=False)
    return Nfh(nfh.sigma, nfh.prefix, closed.determinize().minimize())


def permutation_closure(nfh: Nfh, max_k: int = DEFAULT_CLOSURE_MAX_K) -> Nfh:
    """Union over all k! track reorderings; hyperlanguage unchanged."""
    if nfh.fragment is not Fragment.EXISTS_ONLY:
        raise WrongFragment("permutation closure applies to existential acceptors")
    _require_cap(nfh.k, max_k)
    perms = itertools.permutations(range(1, nfh.k + 1))
    closed = _closure_fa(nfh, perms, combine_union=True)
    return Nfh(nfh.sigma, nfh.prefix, closed.determinize().minimize())


def check_complete(nfh: Nfh, max_k: int = DEFAULT_CLOSURE_MAX_K + 1) -> CompletenessReport:
    """First completeness violation among zip encodings, if any.

    Universal case: some accepted w whose selection through seq is rejected.
    Existential case: some rejected w with an accepted reordering.  The
    violating side is always the returned word w itself.
    """
    frag = nfh.fragment
    if frag not in (Fragment.FORALL_ONLY, Fragment.EXISTS_ONLY):
        raise WrongFragment("completeness is defined for alternation-free acceptors")
    _require_cap(nfh.k, max_k)
    k = nfh.k
    alphabet = nfh.underlying.alphabet
    base = pad_normalize(nfh.underlying, k)
    encodings = zip_filter_fa(nfh.sigma, k)
    identity = tuple(range(1, k + 1))
    if frag is Fragment.FORALL_ONLY:
        accepted = nfh.underlying.intersect(encodings)
        for seq in _all_sequences(k):
            if seq == identity:
                continue
            piece = sequence_remap(base, seq, alphabet)
            witness = piece.contains(accepted)
            if witness is not None:
                return CompletenessReport(
                    False, (ZipWord(k, witness), IndexSequence(seq))
                )
        return CompletenessReport(True, None)
    for seq in itertools.permutations(range(1, k + 1)):
        if seq == identity:
            continue
        piece = sequence_remap(base, seq, alphabet).intersect(encodings)
        witness = nfh.underlying.contains(piece)
        if witness is not None:
            return CompletenessReport(False, (ZipWord(k, witness), IndexSequence(seq)))
    return CompletenessReport(True, None)


def _canonical_fa(nfh: Nfh) -> Fa:
    closed = _closure_fa(
        nfh,
        _all_sequences(nfh.k),
        combine_union=nfh.fragment is Fragment.EXISTS_ONLY,
    )
    trimmed = closed.intersect(zip_filter_fa(nfh.sigma, nfh.k))
    return trimmed.determinize().minimize()


def canonical_equal(a1: Nfh, a2: Nfh, max_k: int = DEFAULT_CLOSURE_MAX_K) -> bool:
    """Hyperlanguage equality of two complete same-fragment acceptors.

    Each side is reduced to its set of accepted zip encodings closed under
    every track selection; the two reductions are compared by one
    containment check per direction.
    """
    if a1.fragment is not a2.fragment or a1.fragment not in (
        Fragment.FORALL_ONLY,
        Fragment.EXISTS_ONLY,
    ):
        raise WrongFragment("canonical equality needs matching alternation-free prefixes")
    if a1.k != a2.k or a1.sigma != a2.sigma:
        raise PreconditionViolated("canonical equality needs equal arity and alphabet")
    _require_cap(a1.k, max_k)
    for side in (a1, a2):
        if not check_complete(side, max_k=max_k).complete:
            raise PreconditionViolated("operand is not complete")
    c1 = _canonical_fa(a1)
    c2 = _canonical_fa(a2)
    return c1.contains(c2) is None and c2.contains(c1) is None
