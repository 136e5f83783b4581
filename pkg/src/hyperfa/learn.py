"""Active learning of alternation-free acceptors from queries.

The observation table stores answers to membership queries on hyperwords
decoded from row-plus-column zip encodings; encodings that decode to no
hyperword (pad before symbol, or an all-pad letter) get a False entry
without consulting the teacher.  Counterexamples larger than the current
variable count raise it; the table is rebuilt by widening every label and
refilling entries.

The automated teacher answers equivalence queries by comparing, for each
candidate hyperword size s, the automata of zip encodings whose track sets
are accepted: for a universal target the intersection over all maps from
variables to s tracks, for an existential target the union.  The shortest
encoding in the symmetric difference decodes to a counterexample of
minimal size.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Optional, Protocol

from .canon import check_complete
from .errors import (
    AlphabetMismatch,
    BudgetExceeded,
    InvalidArity,
    QueryBudgetExceeded,
    ResourceLimit,
    TableNotClosed,
    TeacherInconsistent,
    WrongFragment,
)
from .fa import Fa
from .hfa import (
    Fragment,
    Hyperword,
    Nfh,
    Quantifier,
    equivalent as hfa_equivalent,
    member as hfa_member,
    pad_normalize,
    sequence_remap,
    zip_step,
)
from .zipwords import (
    Letter,
    ZipWord,
    all_letters,
    apply_sequence,
    is_exact_zip,
    lift,
    strip_pads,
    unzip,
    zip_words,
)

TraceFn = Callable[[dict], None]
_EmitFn = Callable[[str, dict], None]


class Teacher(Protocol):
    sigma: tuple[str, ...]

    def member(self, hw: Hyperword) -> bool: ...

    def equivalent(self, candidate: Nfh) -> Optional[tuple[Hyperword, bool]]: ...


@dataclass(frozen=True)
class LearnerConfig:
    max_k: int = 4
    max_iterations: int = 200
    max_word_length: int = 64

    def __post_init__(self) -> None:
        if min(self.max_k, self.max_iterations, self.max_word_length) < 1:
            raise ValueError("learner bounds must be positive")


class ObservationTable:
    """Rows D (prefix-closed) and boundary D.letter, columns E (suffix-closed)."""

    def __init__(
        self,
        teacher: Teacher,
        sigma,
        k: int = 1,
        trace: Optional[_EmitFn] = None,
        budget: Optional[list[int]] = None,
    ):
        self.teacher = teacher
        self.sigma = tuple(sorted(set(sigma)))
        self.k = k
        self.letters = tuple(all_letters(self.sigma, k))
        self.rows: list[ZipWord] = [ZipWord(k, ())]
        self.columns: list[ZipWord] = [ZipWord(k, ())]
        self.trace = trace
        self.budget = budget if budget is not None else [1_000_000]
        self._cache: dict[tuple[Letter, ...], bool] = {}

    def entry_letters(self, word: tuple[Letter, ...]) -> bool:
        if word in self._cache:
            return self._cache[word]
        zw = ZipWord(self.k, word)
        if not is_exact_zip(zw):
            value = False
        else:
            hw = Hyperword.of(unzip(zw))
            if self.budget[0] <= 0:
                raise QueryBudgetExceeded("membership query budget exhausted")
            self.budget[0] -= 1
            value = self.teacher.member(hw)
            if self.trace:
                self.trace("query", {"hyperword": [list(w) for w in hw.words],
                                     "answer": value})
        self._cache[word] = value
        return value

    def entry(self, d: ZipWord, e: ZipWord) -> bool:
        return self.entry_letters(d.letters + e.letters)

    def row_of(self, prefix_letters: tuple[Letter, ...]) -> tuple[bool, ...]:
        return tuple(self.entry_letters(prefix_letters + e.letters) for e in self.columns)

    def add_column_with_suffixes(self, zw: ZipWord) -> bool:
        existing = {c.letters for c in self.columns}
        grew = False
        for i in range(len(zw.letters) + 1):
            suffix = zw.letters[i:]
            if suffix not in existing:
                self.columns.append(ZipWord(self.k, suffix))
                existing.add(suffix)
                grew = True
        return grew


def lift_table(table: ObservationTable, k_new: int) -> ObservationTable:
    """Widen all labels by duplicating their last track; entries refill lazily."""
    if k_new <= table.k:
        raise InvalidArity(f"cannot lift arity {table.k} to {k_new}")
    lifted = ObservationTable(
        table.teacher, table.sigma, k_new, trace=table.trace, budget=table.budget
    )
    lifted.rows = [lift(d, k_new) for d in table.rows]
    lifted.columns = [lift(e, k_new) for e in table.columns]
    return lifted


def close_and_consist(table: ObservationTable) -> ObservationTable:
    """Standard fixpoint: promote unmatched boundary rows, split on the
    first inconsistency by adding a separating letter-column."""
    while True:
        row_set = {table.row_of(d.letters) for d in table.rows}
        promoted = False
        for d in table.rows:
            for letter in table.letters:
                boundary = d.letters + (letter,)
                if table.row_of(boundary) not in row_set:
                    table.rows.append(ZipWord(table.k, boundary))
                    promoted = True
                    break
            if promoted:
                break
        if promoted:
            continue
        split = None
        for i, d1 in enumerate(table.rows):
            if split:
                break
            r1 = table.row_of(d1.letters)
            for d2 in table.rows[i + 1:]:
                if split or r1 != table.row_of(d2.letters):
                    continue
                for letter in table.letters:
                    if split:
                        break
                    b1 = d1.letters + (letter,)
                    b2 = d2.letters + (letter,)
                    for e in list(table.columns):
                        if table.entry_letters(b1 + e.letters) != table.entry_letters(
                            b2 + e.letters
                        ):
                            split = (letter,) + e.letters
                            break
        if split is None:
            return table
        table.columns.append(ZipWord(table.k, split))


def build_candidate(table: ObservationTable, fragment: Fragment) -> Nfh:
    """Deterministic acceptor whose states are the distinct row vectors."""
    if fragment is Fragment.FORALL_ONLY:
        quant = Quantifier.FORALL
    elif fragment is Fragment.EXISTS_ONLY:
        quant = Quantifier.EXISTS
    else:
        raise WrongFragment("candidates are alternation free")
    state_of: dict[tuple[bool, ...], int] = {}
    reps: list[tuple[Letter, ...]] = []
    for d in table.rows:
        r = table.row_of(d.letters)
        if r not in state_of:
            state_of[r] = len(reps)
            reps.append(d.letters)
    transitions = []
    for r, q in sorted(state_of.items(), key=lambda item: item[1]):
        rep = reps[q]
        for letter in table.letters:
            succ = table.row_of(rep + (letter,))
            if succ not in state_of:
                raise TableNotClosed("boundary row without a matching state")
            transitions.append((q, letter, state_of[succ]))
    accepting = [q for r, q in state_of.items() if r[0]]
    fa = Fa(table.letters, len(reps), [0], accepting, transitions)
    return Nfh(table.sigma, (quant,) * table.k, fa)


def learn(
    teacher: Teacher,
    fragment: Fragment,
    config: Optional[LearnerConfig] = None,
    trace: Optional[TraceFn] = None,
) -> Nfh:
    """Query loop: close the table, propose, repair completeness, ask for
    equivalence, and fold counterexamples back into the table.

    A counterexample larger than the current variable count sets the count
    to its size; smaller ones contribute the zip encoding of the first
    ordering of their words on which the candidate disagrees with the
    counterexample's sign.
    """
    if fragment not in (Fragment.FORALL_ONLY, Fragment.EXISTS_ONLY):
        raise WrongFragment("only alternation-free acceptors are learnable")
    config = config or LearnerConfig()
    budget = [config.max_iterations * 2000]
    iteration = [0]

    def emit(event: str, detail: dict) -> None:
        if trace:
            trace({"event": event, "iteration": iteration[0], "k": table.k,
                   "detail": detail})

    table = ObservationTable(teacher, teacher.sigma, 1, trace=emit, budget=budget)
    while True:
        iteration[0] += 1
        if iteration[0] > config.max_iterations:
            raise BudgetExceeded(f"no convergence in {config.max_iterations} iterations")
        measure = len(table.rows) + len(table.columns) + table.k
        close_and_consist(table)
        candidate = build_candidate(table, fragment)
        emit("candidate", {"states": candidate.underlying.n_states})
        report = check_complete(candidate, max_k=max(4, config.max_k))
        if not report.complete:
            word, seq = report.counterexample
            image = strip_pads(apply_sequence(word, seq))
            emit("incomplete", {"word": [list(l) for l in word.letters],
                                "selection": list(seq.indices)})
            grew = table.add_column_with_suffixes(word)
            grew |= table.add_column_with_suffixes(image)
            assert grew or len(table.rows) + len(table.columns) + table.k > measure
        else:
            answer = teacher.equivalent(candidate)
            if answer is None:
                final = candidate.underlying.determinize().minimize()
                emit("done", {"states": final.n_states})
                return Nfh(table.sigma, candidate.prefix, final)
            counterexample, positive = answer
            emit("counterexample", {
                "words": [list(w) for w in counterexample.words],
                "sign": "positive" if positive else "negative",
            })
            if len(counterexample) > table.k:
                k_new = len(counterexample)
                if k_new > config.max_k:
                    raise BudgetExceeded(f"needed more than {config.max_k} variables")
                table = lift_table(table, k_new)
                emit("lift", {"to": k_new})
                table.add_column_with_suffixes(zip_words(counterexample.words))
            else:
                ordering = _disagreeing_ordering(candidate, counterexample, positive, table.k)
                if ordering is None:
                    raise TeacherInconsistent(
                        "no ordering of the counterexample separates the candidate"
                    )
                table.add_column_with_suffixes(ordering)
        assert len(table.rows) + len(table.columns) + table.k > measure, (
            "learner iteration made no progress"
        )


def _disagreeing_ordering(
    candidate: Nfh, hw: Hyperword, positive: bool, k: int
) -> Optional[ZipWord]:
    """First k-tuple covering hw whose encoding the candidate treats
    contrary to the counterexample's sign."""
    full = set(hw.words)
    for combo in itertools.product(sorted(full), repeat=k):
        if set(combo) != full:
            continue
        encoded = zip_words(combo)
        if candidate.underlying.accepts(encoded.letters) != positive:
            return encoded
    return None


# ---------------------------------------------------------------- teacher


class AutomatedTeacher:
    """Answers queries from a known alternation-free acceptor.

    Equivalence counterexamples are minimal in hyperword size; the per-size
    construction is capped at 256 variable-to-track maps, past which the
    teacher falls back to the generic containment check plus greedy
    shrinking of its witness.
    """

    MAP_CAP = 256

    def __init__(self, target: Nfh, config: Optional[LearnerConfig] = None):
        if target.fragment not in (Fragment.FORALL_ONLY, Fragment.EXISTS_ONLY):
            raise WrongFragment("automated teacher needs an alternation-free target")
        self.target = target
        self.sigma = target.sigma
        self.config = config or LearnerConfig()
        self._members: dict[tuple, bool] = {}
        self._target_restrictions: dict[int, Fa] = {}

    def member(self, hw: Hyperword) -> bool:
        key = hw.words
        if key not in self._members:
            self._members[key] = hfa_member(self.target, hw)
        return self._members[key]

    def _restriction(self, nfh: Nfh, size: int) -> Fa:
        """DFA over size-tuples accepting exactly the encodings of accepted
        track sets (union of selections for exists, intersection for forall)."""
        if size ** nfh.k > self.MAP_CAP:
            raise ResourceLimit("restriction map family too large")
        alphabet = all_letters(self.sigma, size)
        base = pad_normalize(nfh.underlying, nfh.k)
        use_union = nfh.fragment is Fragment.EXISTS_ONLY
        result: Optional[Fa] = None
        for assignment in itertools.product(range(1, size + 1), repeat=nfh.k):
            piece = sequence_remap(base, assignment, alphabet)
            if result is None:
                result = piece
            elif use_union:
                result = result.union(piece).determinize().minimize()
            else:
                result = result.intersect(piece).determinize().minimize()
        assert result is not None
        return result.determinize().minimize()

    def equivalent(self, candidate: Nfh) -> Optional[tuple[Hyperword, bool]]:
        if candidate.sigma != self.sigma:
            raise AlphabetMismatch("candidate alphabet differs from the target's")
        top = max(candidate.k, self.target.k)
        try:
            for size in range(1, top + 1):
                if size not in self._target_restrictions:
                    self._target_restrictions[size] = self._restriction(self.target, size)
                rt = self._target_restrictions[size]
                rc = self._restriction(candidate, size)
                only_cand = rc.intersect(rt.complement()).shortest_accepted(zip_step)
                only_target = rt.intersect(rc.complement()).shortest_accepted(zip_step)
                best = None
                if only_cand is not None:
                    best = (len(only_cand), only_cand, False)
                if only_target is not None:
                    entry = (len(only_target), only_target, True)
                    best = entry if best is None else min(best, entry)
                if best is not None:
                    length, word, positive = best
                    if length > self.config.max_word_length:
                        raise ResourceLimit("counterexample exceeds the word-length bound")
                    hw = Hyperword.of(unzip(ZipWord(size, word)))
                    return hw, positive
            return None
        except ResourceLimit:
            return self._fallback(candidate)

    def _fallback(self, candidate: Nfh) -> Optional[tuple[Hyperword, bool]]:
        outcome = hfa_equivalent(
            candidate, self.target, max_k=candidate.k + self.target.k
        )
        if outcome is None:
            return None
        hw, _side = outcome
        words = list(hw.words)
        shrunk = True
        while shrunk and len(words) > 1:
            shrunk = False
            for w in list(words):
                trial = Hyperword.of([x for x in words if x != w])
                if self.member(trial) != hfa_member(candidate, trial):
                    words = list(trial.words)
                    shrunk = True
                    break
        final = Hyperword.of(words)
        return final, self.member(final)


def automated_teacher(target: Nfh, config: Optional[LearnerConfig] = None) -> AutomatedTeacher:
    return AutomatedTeacher(target, config)
