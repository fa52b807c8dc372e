"""One-sided shifts of finite type and their eventually periodic points."""

import json
from dataclasses import dataclass
from functools import cached_property

import networkx as nx

from ..errors import InputError, NotFinite


def primitive_root(w):
    n = len(w)
    for d in range(1, n + 1):
        if n % d == 0 and w[:d] * (n // d) == w:
            return w[:d]
    return w


@dataclass(frozen=True)
class Point:
    """The infinite word pre . per per per ...; always in canonical form
    (shortest period, shortest preperiod), so == is equality of points.
    """

    pre: str
    per: str

    def __post_init__(self):
        if not self.per:
            raise InputError("a point needs a nonempty period")
        pre, per = self.pre, primitive_root(self.per)
        while pre and pre[-1] == per[-1]:
            pre, per = pre[:-1], per[-1] + per[:-1]
        object.__setattr__(self, "pre", pre)
        object.__setattr__(self, "per", per)

    def prefix(self, n):
        w = self.pre
        while len(w) < n:
            w += self.per
        return w[:n]

    def drop(self, n):
        if n <= len(self.pre):
            return Point(self.pre[n:], self.per)
        k = (n - len(self.pre)) % len(self.per)
        return Point("", self.per[k:] + self.per[:k])

    def prepend(self, w):
        return Point(w + self.pre, self.per)

    def __str__(self):
        return f"{self.pre}({self.per})^inf"


def parse_point(text) -> Point:
    """'pre(per)' with an optional trailing '^inf'."""
    t = text.strip()
    if t.endswith("^inf"):
        t = t[:-4]
    if not t.endswith(")") or "(" not in t:
        raise InputError(f"point {text!r} must look like pre(per)")
    k = t.index("(")
    return Point(t[:k], t[k + 1:-1])


class Sft:
    """X = sequences over `alphabet` avoiding every word in `forbidden`.

    The automaton state after reading w is the suffix of w of length
    m = (longest forbidden word) - 1, or w itself while shorter.  Only live
    states (those starting some infinite allowed path) are kept, so a word
    is in the language of X iff it can be read from the empty state.
    """

    def __init__(self, alphabet, forbidden=(), name=None):
        alphabet = tuple(alphabet)
        if not alphabet or any(len(a) != 1 for a in alphabet) or len(set(alphabet)) != len(alphabet):
            raise InputError("alphabet must be distinct single characters")
        forbidden = tuple(sorted(set(forbidden)))
        for f in forbidden:
            if not f or any(c not in alphabet for c in f):
                raise InputError(f"forbidden word {f!r} is empty or uses letters outside the alphabet")
        self.alphabet = alphabet
        self.forbidden = forbidden
        self.memory = max((len(f) for f in forbidden), default=1) - 1
        self.name = name or "X"
        self._build()

    def __repr__(self):
        return f"Sft({self.name!r}, alphabet={''.join(self.alphabet)}, forbidden={list(self.forbidden)})"

    def to_json(self):
        return {"alphabet": list(self.alphabet), "forbidden": list(self.forbidden)}

    def _raw_step(self, state, c):
        w = state + c
        if any(w.endswith(f) for f in self.forbidden):
            return None
        return w[-self.memory:] if self.memory else ""

    def _build(self):
        edges = {}
        seen, todo = {""}, [""]
        while todo:
            s = todo.pop()
            edges[s] = {}
            for c in self.alphabet:
                t = self._raw_step(s, c)
                if t is not None:
                    edges[s][c] = t
                    if t not in seen:
                        seen.add(t)
                        todo.append(t)
        live = set(edges)
        changed = True
        while changed:
            changed = False
            for s in list(live):
                if not any(t in live for t in edges[s].values()):
                    live.discard(s)
                    changed = True
        self._edges = {s: {c: t for c, t in edges[s].items() if t in live} for s in live}

    @property
    def is_empty(self):
        return "" not in self._edges

    @property
    def states(self):
        return sorted(self._edges, key=lambda s: (len(s), s))

    def step(self, state, c):
        if state not in self._edges:
            return None
        return self._edges[state].get(c)

    def run(self, word, state=""):
        """State after reading `word`, or None if the word leaves the language."""
        for c in word:
            state = self.step(state, c)
            if state is None:
                return None
        return state

    def in_language(self, word):
        return self.run(word) is not None

    def successors(self, state):
        return dict(self._edges.get(state, {}))

    def words(self, n):
        """Language words of length exactly n, sorted."""
        out = [("", "")]
        for _ in range(n):
            out = [(w + c, t) for w, s in out for c, t in sorted(self._edges[s].items())]
        return [w for w, _ in out]

    def check_word(self, w):
        for k, c in enumerate(w):
            if c not in self.alphabet:
                raise InputError(f"letter {c!r} at position {k} is not in the alphabet")
        return w

    def contains(self, x: Point) -> bool:
        state = self.run(x.pre)
        seen = set()
        while state is not None and state not in seen:
            seen.add(state)
            state = self.run(x.per, state)
        return state is not None

    @cached_property
    def graph(self):
        G = nx.DiGraph()
        G.add_nodes_from(self._edges)
        for s, out in self._edges.items():
            for c, t in out.items():
                G.add_edge(s, t)
        return G

    def follower_is_single(self, state):
        """Exactly one infinite path starts at `state`."""
        reach = nx.descendants(self.graph, state) | {state}
        return all(len(self._edges[s]) == 1 for s in reach)

    @cached_property
    def is_finite(self):
        """Finite iff every cycle of the live graph is a simple cycle with no
        way out (otherwise the time spent on a cycle before leaving, or the
        choice between two cycles through one state, gives infinitely many
        points).
        """
        for comp in nx.strongly_connected_components(self.graph):
            s = next(iter(comp))
            if len(comp) == 1 and not self.graph.has_edge(s, s):
                continue
            for s in comp:
                if len(self._edges[s]) != 1:
                    return False
        return True

    def points(self):
        """All points of a finite X, sorted."""
        if not self.is_finite:
            raise NotFinite(f"{self.name} has infinitely many points")
        if self.is_empty:
            return []
        out = set()
        stack = [("", "")]
        while stack:
            word, state = stack.pop()
            cyc = self._cycle_from(state)
            if cyc is not None:
                out.add(Point(word, cyc))
                continue
            for c, t in self._edges[state].items():
                stack.append((word + c, t))
        return sorted(out, key=lambda p: (p.prefix(8), p.pre, p.per))

    def _cycle_from(self, state):
        """The period word if `state` lies on a cycle, else None."""
        word, s, seen = "", state, []
        while s not in seen:
            seen.append(s)
            if len(self._edges[s]) != 1:
                return None
            (c, t), = self._edges[s].items()
            word += c
            s = t
        return word if s == state else None


def sft_from_json(data, name=None) -> Sft:
    try:
        return Sft(data["alphabet"], data.get("forbidden", ()), name=name or data.get("name"))
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed shift spec: {exc}") from None


BUILTIN_SHIFTS = {
    "golden-mean": lambda: Sft("01", ["11"], name="golden-mean"),
    "one-letter": lambda: Sft("a", [], name="one-letter"),
    "full-2": lambda: Sft("ab", [], name="full-2"),
    "ab-periodic": lambda: Sft("ab", ["aa", "bb"], name="ab-periodic"),
}


def builtin_shift(name) -> Sft:
    try:
        return BUILTIN_SHIFTS[name]()
    except KeyError:
        raise InputError(f"unknown shift {name!r}; choose from {sorted(BUILTIN_SHIFTS)}") from None


def load_shift(text, name=None) -> Sft:
    """A built-in name or a JSON document."""
    if text in BUILTIN_SHIFTS:
        return builtin_shift(text)
    return sft_from_json(json.loads(text), name=name)


def sample_points(X: Sft, rng, count, max_pre=4, max_per=4):
    """Random eventually periodic points of X (rejection sampling)."""
    out = []
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > 200 * count:
            raise InputError(f"could not sample points of {X.name}")
        pre = "".join(rng.choice(X.alphabet, size=int(rng.integers(0, max_pre + 1))))
        per = "".join(rng.choice(X.alphabet, size=int(rng.integers(1, max_per + 1))))
        x = Point(pre, per)
        if X.contains(x):
            out.append(x)
    return out


def small_points(X: Sft, max_pre=3, max_per=3):
    """Every point of X with preperiod and period up to the given lengths."""
    from itertools import product

    out = set()
    for a in range(max_pre + 1):
        for pre in product(X.alphabet, repeat=a):
            for b in range(1, max_per + 1):
                for per in product(X.alphabet, repeat=b):
                    x = Point("".join(pre), "".join(per))
                    if X.contains(x):
                        out.add(x)
    return sorted(out, key=lambda p: (len(p.pre) + len(p.per), p.pre, p.per))
