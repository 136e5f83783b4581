"""Finite automata over sets of words (hyperwords).

An acceptor has k quantified word variables and an underlying NFA over
k-tuples of symbols (pad token included).  A hyperword S is accepted when
the quantifier prefix, ranging over S, is satisfied by zip-encoded
assignments.  Decision procedures cover the alternation-free fragments and
the exists*-forall* fragment.

The remap-based constructions in this module first pass the underlying
automaton through pad_normalize: acceptance of zip-encoded words is kept
exactly, while trailing all-pad letters stop mattering.  Without this the
letterwise track-selection images (which re-pad to the original length)
would be compared against unpadded encodings and the procedures would
disagree with member on concrete instances.
"""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .errors import (
    AlphabetMismatch,
    EmptyRegularLanguage,
    FormatError,
    InvalidArity,
    InvalidGraph,
    InvalidInterleaving,
    ResourceLimit,
    Unsupported,
    WrongFragment,
)
from .fa import Fa
from .zipwords import (
    PAD,
    Letter,
    Word,
    ZipWord,
    all_letters,
    check_symbol,
    is_legal,
    parse_word,
    unzip,
    word_text,
    zip_words,
)

DEFAULT_MAX_K = 4


class Quantifier(enum.Enum):
    FORALL = "A"
    EXISTS = "E"


class Fragment(enum.Enum):
    EXISTS_ONLY = "exists"
    FORALL_ONLY = "forall"
    EXISTS_FORALL = "exists-forall"
    OTHER = "other"


def classify(prefix: Sequence[Quantifier]) -> Fragment:
    kinds = set(prefix)
    if kinds == {Quantifier.EXISTS}:
        return Fragment.EXISTS_ONLY
    if kinds == {Quantifier.FORALL}:
        return Fragment.FORALL_ONLY
    m = 0
    while m < len(prefix) and prefix[m] is Quantifier.EXISTS:
        m += 1
    if m > 0 and all(q is Quantifier.FORALL for q in prefix[m:]):
        return Fragment.EXISTS_FORALL
    return Fragment.OTHER


@dataclass(frozen=True)
class Hyperword:
    """Nonempty, deduplicated, canonically sorted set of plain words."""

    words: tuple[Word, ...]

    @classmethod
    def of(cls, words: Iterable[Word]) -> "Hyperword":
        canon = tuple(sorted(set(tuple(w) for w in words)))
        if not canon:
            raise InvalidArity("a hyperword holds at least one word")
        for w in canon:
            for sym in w:
                check_symbol(sym)
        return cls(canon)

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self):
        return iter(self.words)


class Nfh:
    """k quantified word variables over an underlying tuple-letter NFA."""

    def __init__(self, sigma: Iterable[str], prefix: Sequence[Quantifier], underlying: Fa):
        self.sigma = tuple(sorted(set(sigma)))
        for sym in self.sigma:
            check_symbol(sym)
        self.prefix = tuple(prefix)
        if not self.prefix:
            raise InvalidArity("at least one quantifier is required")
        self.k = len(self.prefix)
        expected = tuple(all_letters(self.sigma, self.k))
        if underlying.alphabet != expected:
            raise AlphabetMismatch(
                "underlying alphabet must be every arity-k tuple over sigma plus pad"
            )
        self.underlying = underlying

    @cached_property
    def fragment(self) -> Fragment:
        return classify(self.prefix)

    def __repr__(self) -> str:
        pref = "".join(q.value for q in self.prefix)
        return f"Nfh(k={self.k}, sigma={self.sigma}, prefix={pref}, {self.underlying!r})"


def make_nfh(
    sigma: Iterable[str],
    prefix: Sequence[Quantifier],
    n_states: int,
    initial: Iterable[int],
    accepting: Iterable[int],
    transitions: Iterable[tuple[int, Letter, int]],
) -> Nfh:
    sigma = tuple(sorted(set(sigma)))
    alphabet = all_letters(sigma, len(tuple(prefix)))
    if len(alphabet) > 500_000:
        raise ResourceLimit("tuple alphabet too large to materialize")
    return Nfh(sigma, prefix, Fa(alphabet, n_states, initial, accepting, transitions))


def _require_cap(k: int, max_k: int) -> None:
    if k > max_k:
        raise ResourceLimit(f"arity {k} exceeds the cap of {max_k}")


# ------------------------------------------------------------- pad handling


def zip_step(prev: Optional[Letter], nxt: Letter) -> bool:
    """Step filter for exact zip encodings: a dead track stays dead and the
    all-pad letter never occurs."""
    if all(s == PAD for s in nxt):
        return False
    if prev is None:
        return True
    return all(p != PAD or n == PAD for p, n in zip(prev, nxt))


def pad_normalize(fa: Fa, arity: int) -> Fa:
    """Replace L with (L minus words containing an all-pad letter) . pads*.

    Agrees with L on every exact zip encoding and is insensitive to trailing
    all-pad letters, which makes letterwise track-selection images exact.
    """
    pad = (PAD,) * arity
    trans = [t for t in fa.transitions if t[1] != pad]
    tail = fa.n_states
    trans += [(q, pad, tail) for q in sorted(fa.accepting)]
    trans.append((tail, pad, tail))
    return Fa(fa.alphabet, fa.n_states + 1, fa.initial, set(fa.accepting) | {tail}, trans)


def _drop_all_pad(fa: Fa, arity: int) -> Fa:
    """Remove transitions on the all-pad letter.

    Exact zip encodings never contain it, so acceptance of encodings is
    unchanged; product constructions rely on this so a component cannot run
    past the end of its own word tuple through leftover pad moves."""
    pad = (PAD,) * arity
    return Fa(
        fa.alphabet,
        fa.n_states,
        fa.initial,
        fa.accepting,
        [t for t in fa.transitions if t[1] != pad],
    )


def pad_accept(fa: Fa, arity: int) -> Fa:
    """Accept w whenever some w . pads^j is accepted (no new states)."""
    pad = (PAD,) * arity
    rev: dict[int, set[int]] = {}
    for q, a, r in fa.transitions:
        if a == pad:
            rev.setdefault(r, set()).add(q)
    closure = set(fa.accepting)
    frontier = list(closure)
    while frontier:
        r = frontier.pop()
        for q in rev.get(r, ()):
            if q not in closure:
                closure.add(q)
                frontier.append(q)
    return Fa(fa.alphabet, fa.n_states, fa.initial, closure, fa.transitions)


def sequence_remap(fa: Fa, seq: Sequence[int], alphabet: Sequence[Letter]) -> Fa:
    """Automaton accepting w iff fa accepts the letterwise selection of w
    through the 1-based track sequence seq."""
    return fa.remap_letters(lambda l: tuple(l[i - 1] for i in seq), alphabet)


def zip_filter_fa(sigma: Iterable[str], k: int) -> Fa:
    """DFA of exact zip encodings: pad-monotone tracks, no all-pad letter."""
    sigma = tuple(sorted(set(sigma)))
    alphabet = all_letters(sigma, k)
    subsets = [frozenset(c) for size in range(k + 1) for c in
               itertools.combinations(range(k), size)]
    subsets = [s for s in subsets if len(s) < k]  # all-dead never occurs
    ids = {s: i for i, s in enumerate(subsets)}
    trans = []
    for s in subsets:
        for letter in alphabet:
            dead = frozenset(i for i, sym in enumerate(letter) if sym == PAD)
            if len(dead) == k or not s <= dead:
                continue
            trans.append((ids[s], letter, ids[dead]))
    return Fa(alphabet, len(subsets), [ids[frozenset()]], range(len(subsets)), trans)


# ---------------------------------------------------------------- semantics


def member(nfh: Nfh, hw: Hyperword) -> bool:
    """Evaluate the quantifier prefix over hw with short-circuiting."""
    for w in hw.words:
        for sym in w:
            if sym not in nfh.sigma:
                raise AlphabetMismatch(f"hyperword symbol {sym!r} outside sigma")
    underlying = nfh.underlying
    words = hw.words
    prefix = nfh.prefix
    k = nfh.k

    def rec(i: int, chosen: tuple[Word, ...]) -> bool:
        if i == k:
            return underlying.accepts(zip_words(chosen).letters)
        if prefix[i] is Quantifier.EXISTS:
            return any(rec(i + 1, chosen + (w,)) for w in words)
        return all(rec(i + 1, chosen + (w,)) for w in words)

    return rec(0, ())


# ----------------------------------------------------------- Boolean closure


def complement(nfh: Nfh, max_k: int = DEFAULT_MAX_K) -> Nfh:
    """Dualize the prefix and complement the underlying automaton."""
    _require_cap(nfh.k, max_k)
    flipped = tuple(
        Quantifier.EXISTS if q is Quantifier.FORALL else Quantifier.FORALL
        for q in nfh.prefix
    )
    return Nfh(nfh.sigma, flipped, nfh.underlying.complement())


def union(a1: Nfh, a2: Nfh, max_k: int = DEFAULT_MAX_K) -> Nfh:
    """Fan both underlying automata out over the combined tuple alphabet.

    Each side keeps running on its own components; two extra pad states let
    the side that accepted first idle while the other still reads symbols.
    """
    if a1.sigma != a2.sigma:
        raise AlphabetMismatch("union requires identical alphabets")
    k = a1.k + a2.k
    _require_cap(k, max_k)
    u1 = _drop_all_pad(a1.underlying, a1.k)
    u2 = _drop_all_pad(a2.underlying, a2.k)
    side2 = all_letters(a1.sigma, a2.k)
    side1 = all_letters(a1.sigma, a1.k)
    off = u1.n_states
    p1 = off + u2.n_states
    p2 = p1 + 1
    pad1 = (PAD,) * a1.k
    pad2 = (PAD,) * a2.k
    trans: list[tuple[int, Letter, int]] = []
    for q, l, r in u1.transitions:
        trans += [(q, l + t, r) for t in side2]
    for q, l, r in u2.transitions:
        trans += [(q + off, t + l, r + off) for t in side1]
    for q in sorted(u1.accepting):
        trans += [(q, pad1 + t, p1) for t in side2]
    trans += [(p1, pad1 + t, p1) for t in side2]
    for q in sorted(u2.accepting):
        trans += [(q + off, t + pad2, p2) for t in side1]
    trans += [(p2, t + pad2, p2) for t in side1]
    underlying = Fa(
        all_letters(a1.sigma, k),
        p2 + 1,
        list(u1.initial) + [q + off for q in u2.initial],
        list(u1.accepting) + [q + off for q in u2.accepting] + [p1, p2],
        trans,
    )
    return Nfh(a1.sigma, a1.prefix + a2.prefix, underlying)


def _merge_pattern(k1: int, k2: int, interleaving: Optional[Sequence[int]]) -> tuple[int, ...]:
    if interleaving is None:
        return (0,) * k1 + (1,) * k2
    pattern = tuple(interleaving)
    if sorted(pattern) != [0] * k1 + [1] * k2:
        raise InvalidInterleaving(
            f"pattern {pattern!r} must contain {k1} zeros and {k2} ones"
        )
    return pattern


def intersect(
    a1: Nfh,
    a2: Nfh,
    interleaving: Optional[Sequence[int]] = None,
    max_k: int = DEFAULT_MAX_K,
) -> Nfh:
    """Synchronous product; a sink per side consumes pad blocks after that
    side's word tuple has ended.

    interleaving is a 0/1 pattern (default: all of a1 then all of a2) saying
    which side each combined variable comes from; both internal orders are
    preserved.
    """
    if a1.sigma != a2.sigma:
        raise AlphabetMismatch("intersection requires identical alphabets")
    k = a1.k + a2.k
    _require_cap(k, max_k)
    pattern = _merge_pattern(a1.k, a2.k, interleaving)

    def merge(l1: Letter, l2: Letter) -> Letter:
        it1, it2 = iter(l1), iter(l2)
        return tuple(next(it1) if side == 0 else next(it2) for side in pattern)

    prefix = merge(a1.prefix, a2.prefix)
    u1 = _drop_all_pad(a1.underlying, a1.k)
    u2 = _drop_all_pad(a2.underlying, a2.k)
    sink1, sink2 = u1.n_states, u2.n_states
    width = sink2 + 1

    def sid(q: int, p: int) -> int:
        return q * width + p

    pad1 = (PAD,) * a1.k
    pad2 = (PAD,) * a2.k
    trans: list[tuple[int, Letter, int]] = []
    for q, l1, q2 in u1.transitions:
        for p, l2, p2 in u2.transitions:
            trans.append((sid(q, p), merge(l1, l2), sid(q2, p2)))
    for q in sorted(u1.accepting):
        for p, l2, p2 in u2.transitions:
            trans.append((sid(q, p), merge(pad1, l2), sid(sink1, p2)))
    for p, l2, p2 in u2.transitions:
        trans.append((sid(sink1, p), merge(pad1, l2), sid(sink1, p2)))
    for p in sorted(u2.accepting):
        for q, l1, q2 in u1.transitions:
            trans.append((sid(q, p), merge(l1, pad2), sid(q2, sink2)))
    for q, l1, q2 in u1.transitions:
        trans.append((sid(q, sink2), merge(l1, pad2), sid(q2, sink2)))
    accepting = [
        sid(q, p)
        for q in sorted(set(u1.accepting) | {sink1})
        for p in sorted(set(u2.accepting) | {sink2})
    ]
    underlying = Fa(
        all_letters(a1.sigma, k),
        (sink1 + 1) * width,
        [sid(q, p) for q in sorted(u1.initial) for p in sorted(u2.initial)],
        accepting,
        trans,
    )
    return Nfh(a1.sigma, prefix, underlying)


# -------------------------------------------------------------- nonemptiness


def nonempty_exists(nfh: Nfh) -> Optional[Hyperword]:
    """Witness hyperword for a purely existential acceptor, or None."""
    if nfh.fragment is not Fragment.EXISTS_ONLY:
        raise WrongFragment("nonempty_exists needs a purely existential prefix")
    found = nfh.underlying.shortest_accepted(zip_step)
    if found is None:
        return None
    return Hyperword.of(unzip(ZipWord(nfh.k, found)))


def nonempty_forall(nfh: Nfh) -> Optional[Hyperword]:
    """Witness singleton for a purely universal acceptor, or None."""
    if nfh.fragment is not Fragment.FORALL_ONLY:
        raise WrongFragment("nonempty_forall needs a purely universal prefix")

    def diagonal(prev: Optional[Letter], nxt: Letter) -> bool:
        return nxt[0] != PAD and all(s == nxt[0] for s in nxt)

    found = nfh.underlying.shortest_accepted(diagonal)
    if found is None:
        return None
    return Hyperword.of([tuple(l[0] for l in found)])


def nonempty_exists_forall(nfh: Nfh, max_k: int = DEFAULT_MAX_K) -> Optional[Hyperword]:
    """Witness for an exists^m forall^(k-m) acceptor, or None.

    Intersects, over every track sequence fixing the existential block and
    re-reading universal tracks from it, the letterwise selection automata;
    an exact-zip witness instantiates the m existential tracks.
    """
    frag = nfh.fragment
    if frag is Fragment.EXISTS_ONLY:
        return nonempty_exists(nfh)
    if frag is Fragment.FORALL_ONLY:
        return nonempty_forall(nfh)
    if frag is not Fragment.EXISTS_FORALL:
        raise WrongFragment("prefix is not of the exists*-forall* shape")
    _require_cap(nfh.k, max_k)
    m = sum(1 for q in nfh.prefix if q is Quantifier.EXISTS)
    alphabet = nfh.underlying.alphabet
    base = pad_normalize(nfh.underlying, nfh.k)
    product: Optional[Fa] = None
    head = tuple(range(1, m + 1))
    for tail in itertools.product(range(1, m + 1), repeat=nfh.k - m):
        remapped = sequence_remap(base, head + tail, alphabet)
        product = remapped if product is None else product.intersect(remapped)
    assert product is not None
    found = product.shortest_accepted(zip_step)
    if found is None:
        return None
    tracks = unzip(ZipWord(nfh.k, found))
    return Hyperword.of(tracks[:m])


# -------------------------------------------------- regular-language queries


def regular_member(lang: Fa, nfh: Nfh, max_k: int = DEFAULT_MAX_K) -> bool:
    """Decide whether the whole regular language L(lang) is accepted.

    Quantifiers are eliminated innermost first: the last track is projected
    through lang extended with a pad tail, wrapped in a complement pair when
    that variable is universal.  Each projection is closed under trailing
    all-pad letters so longer instantiations of the variables still pending
    keep matching.
    """
    if tuple(sorted(lang.alphabet)) != nfh.sigma:
        raise AlphabetMismatch("regular language and acceptor declare different alphabets")
    if lang.is_empty():
        raise EmptyRegularLanguage("membership of the empty language is undefined")
    _require_cap(nfh.k, max_k)
    tail = lang.n_states
    padded = Fa(
        tuple(lang.alphabet) + (PAD,),
        lang.n_states + 1,
        lang.initial,
        set(lang.accepting) | {tail},
        list(lang.transitions)
        + [(q, PAD, tail) for q in sorted(lang.accepting)]
        + [(tail, PAD, tail)],
    )
    current = pad_normalize(nfh.underlying, nfh.k)
    prefix = list(nfh.prefix)
    k = nfh.k
    while k > 1:
        innermost = prefix.pop()
        if innermost is Quantifier.FORALL:
            current = current.complement()
        current = _project_last_track(current, padded, nfh.sigma, k)
        if innermost is Quantifier.FORALL:
            current = current.complement()
        k -= 1
    lifted = lang.remap_letters(lambda l: l[0], all_letters(nfh.sigma, 1))
    if prefix[0] is Quantifier.FORALL:
        return current.complement().intersect(lifted).shortest_accepted() is None
    return current.intersect(lifted).shortest_accepted() is not None


def _project_last_track(current: Fa, padded: Fa, sigma: tuple[str, ...], k: int) -> Fa:
    """Project the innermost track by reversing component order, pairing on
    the front, and reversing the remainder back."""
    flip = current.remap_letters(lambda l: l[::-1], all_letters(sigma, k))
    projected = _project_first_track(flip, padded, sigma, k)
    return projected.remap_letters(lambda l: l[::-1], all_letters(sigma, k - 1))


def _project_first_track(current: Fa, padded: Fa, sigma: tuple[str, ...], k: int) -> Fa:
    """Pair runs of current with padded runs on the first components, then
    emit the remaining components; closed under trailing pads."""
    from collections import deque

    alphabet = all_letters(sigma, k - 1)
    ids: dict[tuple[int, int], int] = {}
    order: list[tuple[int, int]] = []
    queue: deque[tuple[int, int]] = deque()
    for q in sorted(current.initial):
        for p in sorted(padded.initial):
            ids[(q, p)] = len(order)
            order.append((q, p))
            queue.append((q, p))
    by_state: dict[int, list[tuple[Letter, int]]] = {}
    for q, l, r in current.transitions:
        by_state.setdefault(q, []).append((l, r))
    trans: list[tuple[int, Letter, int]] = []
    while queue:
        q, p = queue.popleft()
        sid = ids[(q, p)]
        for l, q2 in by_state.get(q, ()):
            for p2 in padded._step.get((p, l[0]), ()):
                node = (q2, p2)
                if node not in ids:
                    ids[node] = len(order)
                    order.append(node)
                    queue.append(node)
                trans.append((sid, l[1:], ids[node]))
    accepting = [
        i for i, (q, p) in enumerate(order)
        if q in current.accepting and p in padded.accepting
    ]
    projected = Fa(
        alphabet,
        max(len(order), 1),
        [ids[(q, p)] for q in sorted(current.initial) for p in sorted(padded.initial)],
        accepting,
        trans,
    )
    return pad_accept(projected, k - 1)


# --------------------------------------------------- containment/equivalence


def contains(a1: Nfh, a2: Nfh, max_k: int = DEFAULT_MAX_K) -> Optional[Hyperword]:
    """None iff every hyperword of a1 is one of a2; otherwise a witness
    accepted by a1 only.

    Supported pairs: a1 in {exists, forall, exists-forall}, a2 alternation
    free.  The complement of a2 is interleaved with all existential
    variables hoisted in front of all universal ones.
    """
    f1 = a1.fragment
    if f1 is Fragment.OTHER:
        raise Unsupported(f"left argument fragment {f1.value} is not supported")
    if a2.fragment not in (Fragment.EXISTS_ONLY, Fragment.FORALL_ONLY):
        raise Unsupported("right argument must be alternation free")
    comp = complement(a2, max_k=max_k)
    m1 = sum(1 for q in a1.prefix if q is Quantifier.EXISTS)
    if comp.fragment is Fragment.EXISTS_ONLY:
        pattern = (0,) * m1 + (1,) * comp.k + (0,) * (a1.k - m1)
    else:
        pattern = (0,) * a1.k + (1,) * comp.k
    diff = intersect(a1, comp, interleaving=pattern, max_k=max_k)
    return nonempty_exists_forall(diff, max_k=max_k)


def equivalent(
    a1: Nfh, a2: Nfh, max_k: int = DEFAULT_MAX_K
) -> Optional[tuple[Hyperword, str]]:
    """None iff both accept the same hyperwords; otherwise a separating
    hyperword tagged "left_only" or "right_only"."""
    for side in (a1, a2):
        if side.fragment not in (Fragment.EXISTS_ONLY, Fragment.FORALL_ONLY):
            raise Unsupported("equivalence needs alternation-free arguments")
    witness = contains(a1, a2, max_k=max_k)
    if witness is not None:
        return witness, "left_only"
    witness = contains(a2, a1, max_k=max_k)
    if witness is not None:
        return witness, "right_only"
    return None


# --------------------------------------------------------------- reductions


def gen_hamiltonian(n: int, edges: Iterable[tuple[int, int]]) -> tuple[Nfh, Hyperword]:
    """Instance whose membership holds iff the graph has a Hamiltonian cycle.

    Vertices are 1..n; edges are undirected.  The acceptor has one
    existential variable and one indicator word per vertex; an accepting run
    walks edges and consumes, at step j, the letter marking the vertex it
    leaves, so accepted assignments are exactly cyclic vertex orderings.
    """
    if n < 2:
        raise InvalidGraph("need at least two vertices")
    edge_list = []
    for u, v in edges:
        if not (1 <= u <= n and 1 <= v <= n):
            raise InvalidGraph(f"edge ({u},{v}) outside 1..{n}")
        edge_list.append((u, v))
    sigma = ("0", "1")

    def mark(i: int) -> Letter:
        return tuple("1" if j == i else "0" for j in range(1, n + 1))

    trans = set()
    for u, v in edge_list:
        trans.add((u - 1, mark(u), v - 1))
        trans.add((v - 1, mark(v), u - 1))
    nfh = make_nfh(sigma, (Quantifier.EXISTS,) * n, n, [0], [0], trans)
    words = [
        tuple("1" if j == i else "0" for j in range(1, n + 1)) for i in range(1, n + 1)
    ]
    return nfh, Hyperword.of(words)


# ------------------------------------------------------------- wire formats


_HEADER_RE = re.compile(r"nfh k=(\d+) sigma=(\S+) prefix=([AE]+)\Z")


def format_nfh(nfh: Nfh) -> str:
    lines = [
        f"nfh k={nfh.k} sigma={','.join(nfh.sigma)} "
        f"prefix={''.join(q.value for q in nfh.prefix)}"
    ]
    u = nfh.underlying
    for q in range(u.n_states):
        flags = ""
        if q in u.initial:
            flags += " init"
        if q in u.accepting:
            flags += " accept"
        lines.append(f"state {q}{flags}")
    for q, letter, r in u.transitions:
        lines.append(f"trans {q} ({','.join(letter)}) {r}")
    return "\n".join(lines) + "\n"


def parse_nfh(text: str) -> Nfh:
    lines = [ln.strip() for ln in text.split("\n")]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise FormatError("empty acceptor text")
    header = _HEADER_RE.match(lines[0])
    if not header:
        raise FormatError(f"bad header line {lines[0]!r}")
    k = int(header.group(1))
    sigma = tuple(header.group(2).split(","))
    prefix = tuple(Quantifier(c) for c in header.group(3))
    if len(prefix) != k:
        raise FormatError("prefix length disagrees with k")
    n_states = 0
    initial: list[int] = []
    accepting: list[int] = []
    transitions: list[tuple[int, Letter, int]] = []
    for ln in lines[1:]:
        parts = ln.split()
        if parts[0] == "state":
            if len(parts) < 2 or not parts[1].isdigit():
                raise FormatError(f"bad state line {ln!r}")
            q = int(parts[1])
            n_states = max(n_states, q + 1)
            for flag in parts[2:]:
                if flag == "init":
                    initial.append(q)
                elif flag == "accept":
                    accepting.append(q)
                else:
                    raise FormatError(f"unknown state flag {flag!r}")
        elif parts[0] == "trans":
            if len(parts) != 4 or not (parts[1].isdigit() and parts[3].isdigit()):
                raise FormatError(f"bad transition line {ln!r}")
            if not (parts[2].startswith("(") and parts[2].endswith(")")):
                raise FormatError(f"bad letter in {ln!r}")
            letter = tuple(parts[2][1:-1].split(","))
            if len(letter) != k:
                raise FormatError(f"letter arity mismatch in {ln!r}")
            q, r = int(parts[1]), int(parts[3])
            n_states = max(n_states, q + 1, r + 1)
            transitions.append((q, letter, r))
        else:
            raise FormatError(f"unknown directive {parts[0]!r}")
    try:
        return make_nfh(sigma, prefix, n_states, initial, accepting, transitions)
    except (AlphabetMismatch, InvalidArity) as exc:
        raise FormatError(str(exc)) from exc


def uses_multichar(sigma: Iterable[str]) -> bool:
    return any(len(s) > 1 for s in sigma)


def format_hyperword(hw: Hyperword, sigma: Iterable[str]) -> str:
    multi = uses_multichar(sigma)
    return "\n".join(word_text(w, multi) for w in hw.words) + "\n"


def parse_hyperword(text: str, sigma: Iterable[str]) -> Hyperword:
    sigma = tuple(sorted(set(sigma)))
    multi = uses_multichar(sigma)
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    words = [parse_word(ln, multi) for ln in lines]
    hw = Hyperword.of(words)
    for w in hw.words:
        for sym in w:
            if sym not in sigma:
                raise AlphabetMismatch(f"word symbol {sym!r} outside sigma")
    return hw
