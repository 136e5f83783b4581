"""A small NFA engine over an explicit, opaque letter alphabet.

States are dense ints [0..n).  Letters are any hashable values (plain
symbols for ordinary automata, symbol tuples for zip encodings); iteration
order is always the sorted alphabet so every construction is deterministic.
No epsilon transitions anywhere.
"""

from __future__ import annotations

from collections import deque
from typing import Callable, Hashable, Iterable, Optional

from .errors import AlphabetMismatch, InvalidArity, UnknownLetter

LetterT = Hashable
StepFilter = Callable[[Optional[LetterT], LetterT], bool]


class Fa:
    """Nondeterministic finite automaton with value semantics (never mutated)."""

    def __init__(
        self,
        alphabet: Iterable[LetterT],
        n_states: int,
        initial: Iterable[int],
        accepting: Iterable[int],
        transitions: Iterable[tuple[int, LetterT, int]],
    ):
        self.alphabet = tuple(sorted(set(alphabet)))
        self._alphabet_set = frozenset(self.alphabet)
        self.n_states = n_states
        self.initial = frozenset(initial)
        self.accepting = frozenset(accepting)
        self.transitions = tuple(sorted(set(transitions)))
        for q in self.initial | self.accepting:
            if not 0 <= q < n_states:
                raise InvalidArity(f"state {q} outside [0..{n_states})")
        step: dict[tuple[int, LetterT], list[int]] = {}
        for q, a, r in self.transitions:
            if not (0 <= q < n_states and 0 <= r < n_states):
                raise InvalidArity(f"transition {(q, a, r)} uses unknown state")
            if a not in self._alphabet_set:
                raise UnknownLetter(f"transition letter {a!r} outside the alphabet")
            step.setdefault((q, a), []).append(r)
        self._step = {k: tuple(sorted(v)) for k, v in step.items()}

    # ------------------------------------------------------------------ runs

    def step(self, states: frozenset[int], letter: LetterT) -> frozenset[int]:
        if letter not in self._alphabet_set:
            raise UnknownLetter(f"letter {letter!r} outside the alphabet")
        out: set[int] = set()
        for q in states:
            out.update(self._step.get((q, letter), ()))
        return frozenset(out)

    def accepts(self, word: Iterable[LetterT]) -> bool:
        states = self.initial
        for letter in word:
            if not states:
                return False
            states = self.step(states, letter)
        return bool(states & self.accepting)

    def shortest_accepted(self, step_ok: StepFilter | None = None) -> Optional[tuple]:
        """Shortest accepted word, ties broken by canonical letter order.

        With a filter, only words whose consecutive letter pairs satisfy
        step_ok(previous_or_None, next) are searched.  Returns None iff no
        (filtered) word is accepted.
        """
        # Search nodes are (state, last letter); BFS discovery order within a
        # layer is lexicographic, so the first accepting hit is minimal.
        parent: dict[tuple[int, Optional[LetterT]], tuple] = {}
        queue: deque[tuple[int, Optional[LetterT]]] = deque()
        for q in sorted(self.initial):
            node = (q, None)
            parent[node] = ()
            if q in self.accepting:
                return ()
            queue.append(node)
        while queue:
            q, last = queue.popleft()
            base = parent[(q, last)]
            for letter in self.alphabet:
                if step_ok is not None and not step_ok(last, letter):
                    continue
                for r in self._step.get((q, letter), ()):
                    node = (r, letter)
                    if node in parent:
                        continue
                    parent[node] = base + (letter,)
                    if r in self.accepting:
                        return parent[node]
                    queue.append(node)
        return None

    def is_empty(self) -> bool:
        return self.shortest_accepted() is None

    # ------------------------------------------------- subset constructions

    def determinize(self) -> "Fa":
        """Complete DFA via subset construction (state 0 = initial subset)."""
        start = self.initial
        ids: dict[frozenset[int], int] = {start: 0}
        order = [start]
        trans: list[tuple[int, LetterT, int]] = []
        queue = deque([start])
        while queue:
            subset = queue.popleft()
            sid = ids[subset]
            for letter in self.alphabet:
                nxt = self.step(subset, letter) if subset else frozenset()
                if nxt not in ids:
                    ids[nxt] = len(order)
                    order.append(nxt)
                    queue.append(nxt)
                trans.append((sid, letter, ids[nxt]))
        accepting = [ids[s] for s in order if s & self.accepting]
        return Fa(self.alphabet, len(order), [0], accepting, trans)

    def complement(self) -> "Fa":
        det = self.determinize()
        accepting = set(range(det.n_states)) - set(det.accepting)
        return Fa(det.alphabet, det.n_states, det.initial, accepting, det.transitions)

    def minimize(self) -> "Fa":
        """Determinize, then merge Myhill-Nerode-equivalent states (Hopcroft)."""
        det = self.determinize()
        accepting = set(det.accepting)
        rest = set(range(det.n_states)) - accepting
        partition: list[set[int]] = [s for s in (accepting, rest) if s]
        worklist: list[set[int]] = [min(partition, key=len)] if len(partition) > 1 else []
        pre: dict[tuple[LetterT, int], set[int]] = {}
        for q, a, r in det.transitions:
            pre.setdefault((a, r), set()).add(q)
        while worklist:
            splitter = worklist.pop()
            for letter in det.alphabet:
                x = set()
                for r in splitter:
                    x |= pre.get((letter, r), set())
                new_partition = []
                for block in partition:
                    inter = block & x
                    diff = block - x
                    if inter and diff:
                        new_partition += [inter, diff]
                        if block in worklist:
                            worklist.remove(block)
                            worklist += [inter, diff]
                        else:
                            worklist.append(min(inter, diff, key=len))
                    else:
                        new_partition.append(block)
                partition = new_partition
        block_of = {}
        for idx, block in enumerate(partition):
            for q in block:
                block_of[q] = idx
        # renumber blocks in BFS order from the initial block for determinism
        init_block = block_of[next(iter(det.initial))]
        rename = {init_block: 0}
        order = deque([init_block])
        trans_by_block = {}
        for q, a, r in det.transitions:
            trans_by_block[(block_of[q], a)] = block_of[r]
        while order:
            b = order.popleft()
            for letter in det.alphabet:
                t = trans_by_block[(b, letter)]
                if t not in rename:
                    rename[t] = len(rename)
                    order.append(t)
        trans = [
            (rename[b], a, rename[t])
            for (b, a), t in trans_by_block.items()
            if b in rename
        ]
        accepting_blocks = {rename[block_of[q]] for q in det.accepting if block_of[q] in rename}
        return Fa(det.alphabet, len(rename), [0], accepting_blocks, trans)

    # --------------------------------------------------------- combinations

    def _require_same_alphabet(self, other: "Fa") -> None:
        if self.alphabet != other.alphabet:
            raise AlphabetMismatch("operands declare different alphabets")

    def intersect(self, other: "Fa") -> "Fa":
        """Reachable product automaton."""
        self._require_same_alphabet(other)
        ids: dict[tuple[int, int], int] = {}
        order: list[tuple[int, int]] = []
        queue: deque[tuple[int, int]] = deque()
        for q in sorted(self.initial):
            for p in sorted(other.initial):
                ids[(q, p)] = len(order)
                order.append((q, p))
                queue.append((q, p))
        trans: list[tuple[int, LetterT, int]] = []
        while queue:
            q, p = queue.popleft()
            sid = ids[(q, p)]
            for letter in self.alphabet:
                for q2 in self._step.get((q, letter), ()):
                    for p2 in other._step.get((p, letter), ()):
                        if (q2, p2) not in ids:
                            ids[(q2, p2)] = len(order)
                            order.append((q2, p2))
                            queue.append((q2, p2))
                        trans.append((sid, letter, ids[(q2, p2)]))
        accepting = [
            i for i, (q, p) in enumerate(order)
            if q in self.accepting and p in other.accepting
        ]
        return Fa(self.alphabet, max(len(order), 1), [ids[(q, p)] for q in sorted(self.initial) for p in sorted(other.initial)], accepting, trans)

    def union(self, other: "Fa") -> "Fa":
        """Disjoint union (other's states shifted by self.n_states)."""
        self._require_same_alphabet(other)
        off = self.n_states
        trans = list(self.transitions) + [
            (q + off, a, r + off) for q, a, r in other.transitions
        ]
        return Fa(
            self.alphabet,
            self.n_states + other.n_states,
            list(self.initial) + [q + off for q in other.initial],
            list(self.accepting) + [q + off for q in other.accepting],
            trans,
        )

    def contains(self, other: "Fa") -> Optional[tuple]:
        """None iff L(other) <= L(self); otherwise a shortest counterexample."""
        self._require_same_alphabet(other)
        return other.intersect(self.complement()).shortest_accepted()

    def remap_letters(self, f: Callable[[LetterT], object], new_alphabet: Iterable[LetterT]) -> "Fa":
        """Inverse-image relabelling.

        The result has a transition on letter a iff this automaton has a
        same-endpoint transition on f(a); f may also return an iterable of
        letters (transition iff any image letter has one).  Hence the result
        accepts w iff this automaton accepts some letterwise image of w.
        """
        new_alphabet = tuple(sorted(set(new_alphabet)))
        trans: list[tuple[int, LetterT, int]] = []
        by_letter: dict[LetterT, list[tuple[int, int]]] = {}
        for q, a, r in self.transitions:
            by_letter.setdefault(a, []).append((q, r))
        for a in new_alphabet:
            image = f(a)
            olds = [image] if (isinstance(image, tuple) or not isinstance(image, (list, set, frozenset))) else sorted(image)
            for old in olds:
                for q, r in by_letter.get(old, ()):
                    trans.append((q, a, r))
        return Fa(new_alphabet, self.n_states, self.initial, self.accepting, trans)

    # -------------------------------------------------------------- display

    def to_dot(self, name: str = "fa") -> str:
        def fmt(letter: LetterT) -> str:
            if isinstance(letter, tuple):
                return "(" + ",".join(str(s) for s in letter) + ")"
            return str(letter)

        lines = [f"digraph {name} {{", "  rankdir=LR;"]
        for q in sorted(self.initial):
            lines.append(f"  __init{q} [shape=point];")
        for q in range(self.n_states):
            shape = "doublecircle" if q in self.accepting else "circle"
            lines.append(f"  {q} [shape={shape}];")
        for q in sorted(self.initial):
            lines.append(f"  __init{q} -> {q};")
        edges: dict[tuple[int, int], list[str]] = {}
        for q, a, r in self.transitions:
            edges.setdefault((q, r), []).append(fmt(a))
        for (q, r), labels in sorted(edges.items()):
            lines.append(f'  {q} -> {r} [label="{", ".join(labels)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        return (
            f"Fa(states={self.n_states}, letters={len(self.alphabet)}, "
            f"transitions={len(self.transitions)})"
        )
