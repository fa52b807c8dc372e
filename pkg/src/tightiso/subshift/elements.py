"""The inverse semigroup S_X of partial maps beta y -> alpha y on a shift.

Elements are stored functionally as (alpha, beta, domain) with the domain a
clopen subset of C(beta); equality is equality of partial maps, never of
the presentation.
"""

import re
from dataclasses import dataclass

from ..errors import NotInDomain, ParseError
from . import clopen as co
from .clopen import ClopenSet
from .sft import Point, Sft


@dataclass(frozen=True)
class SxElement:
    alpha: str = ""
    beta: str = ""
    domain: ClopenSet = co.EMPTY

    @property
    def is_zero(self):
        return self.domain.is_empty

    def __str__(self):
        if self.is_zero:
            return "0"
        return f"<{self.alpha or 'ε'} <- {self.beta or 'ε'} on {self.domain}>"


ZERO = SxElement()


def make(X: Sft, alpha, beta, domain: ClopenSet) -> SxElement:
    """Restrict `domain` to where beta y -> alpha y is defined inside X."""
    natural = co.prepend(X, beta, co.strip(X, alpha, co.full(X)))
    dom = co.intersection(X, domain, natural)
    if dom.is_empty:
        return ZERO
    return SxElement(alpha, beta, dom)


def one(X):
    return make(X, "", "", co.full(X))


def s(X, alpha):
    """s_alpha: x -> alpha x."""
    X.check_word(alpha)
    return make(X, alpha, "", co.full(X))


def s_star(X, alpha):
    X.check_word(alpha)
    return make(X, "", alpha, co.cylinder(X, alpha))


def E(X, F, gamma):
    """Identity on C(F; gamma)."""
    for f in F:
        X.check_word(f)
    return make(X, "", "", co.c_fset(X, F, gamma))


def idempotent_on(X, K: ClopenSet):
    return make(X, "", "", K)


def image(X, e: SxElement) -> ClopenSet:
    if e.is_zero:
        return co.EMPTY
    return co.prepend(X, e.alpha, co.strip(X, e.beta, e.domain))


def preimage(X, e: SxElement, K: ClopenSet) -> ClopenSet:
    """{x in dom e : e(x) in K}."""
    if e.is_zero:
        return co.EMPTY
    return co.intersection(X, co.prepend(X, e.beta, co.strip(X, e.alpha, K)), e.domain)


def sx_star(X, e: SxElement) -> SxElement:
    if e.is_zero:
        return ZERO
    return make(X, e.beta, e.alpha, image(X, e))


def sx_mul(X, e1: SxElement, e2: SxElement) -> SxElement:
    """e1 o e2 (apply e2 first)."""
    if e1.is_zero or e2.is_zero:
        return ZERO
    a2, b1 = e2.alpha, e1.beta
    if a2.startswith(b1):
        alpha, beta = e1.alpha + a2[len(b1):], e2.beta
    elif b1.startswith(a2):
        alpha, beta = e1.alpha, e2.beta + b1[len(a2):]
    else:
        return ZERO
    return make(X, alpha, beta, preimage(X, e2, e1.domain))


def sx_product(X, *factors):
    out = factors[0]
    for f in factors[1:]:
        out = sx_mul(X, out, f)
    return out


def apply(X, e: SxElement, x: Point) -> Point:
    if e.is_zero or not co.contains(e.domain, x):
        raise NotInDomain(f"{x} is not in the domain")
    return x.drop(len(e.beta)).prepend(e.alpha)


def theta_on_point(X, e, x: Point) -> Point:
    return apply(X, e, x)


def sx_eq(X, e1: SxElement, e2: SxElement) -> bool:
    """Equality of partial maps.

    With equal domains and x = b1 y1 = b2 y2, say b2 = b1 z, the maps agree
    iff A y = B y on Y = strip(b2, dom) where A = a1 z and B = a2.  Equal
    lengths force A = B; otherwise the longer is the shorter followed by d
    and every y in Y must equal d^inf, i.e. Y = {d^inf}.
    """
    if e1.is_zero or e2.is_zero:
        return e1.is_zero and e2.is_zero
    if e1.domain != e2.domain:
        return False
    if len(e1.beta) > len(e2.beta):
        e1, e2 = e2, e1
    if not e2.beta.startswith(e1.beta):
        return False  # unreachable for a nonempty common domain
    z = e2.beta[len(e1.beta):]
    A, B = e1.alpha + z, e2.alpha
    if len(A) == len(B):
        return A == B
    short, long_ = (A, B) if len(A) < len(B) else (B, A)
    if not long_.startswith(short):
        return False
    d = long_[len(short):]
    Y = co.strip(X, e2.beta, e2.domain)
    return co.is_singleton(X, Y) and co.contains(Y, Point("", d))


def is_idempotent(X, e):
    return sx_eq(X, sx_mul(X, e, e), e)


def fixed_points(X, e: SxElement):
    """Fixed points of e: a ClopenSet when |alpha| = |beta|, otherwise a list
    with at most the single candidate beta d^inf.
    """
    if e.is_zero:
        return [] if len(e.alpha) != len(e.beta) else co.EMPTY
    a, b = e.alpha, e.beta
    if len(a) == len(b):
        return e.domain if a == b else co.EMPTY
    if a.startswith(b):
        d = a[len(b):]
    elif b.startswith(a):
        d = b[len(a):]
    else:
        return []
    x = Point(b, d)
    if X.contains(x) and co.contains(e.domain, x) and apply(X, e, x) == x:
        return [x]
    return []


# -- text syntax ------------------------------------------------------------

_TOKEN = re.compile(r"\s*(s\*\(([^()]*)\)|s\(([^()]*)\)|E\(([^();]*);([^()]*)\)|1|0)\s*")


def _word(X, text, offset):
    text = text.strip()
    if text in ("ε", ""):
        return ""
    for k, c in enumerate(text):
        if c not in X.alphabet:
            raise ParseError(f"letter {c!r} not in the alphabet", offset + len(text[:k].encode()))
    return text


def parse_element(X: Sft, text) -> SxElement:
    """Products like ``s(01).E(1;0).s*(0)``, also ``1`` and ``0``."""
    out = None
    pos = 0
    for part in text.split("."):
        m = _TOKEN.fullmatch(part)
        if m is None:
            raise ParseError(f"cannot parse factor {part!r}", pos)

        def at(group):
            return pos + len(part[: m.start(group)].encode())

        if m.group(1) == "1":
            f = one(X)
        elif m.group(1) == "0":
            f = ZERO
        elif m.group(2) is not None:
            f = s_star(X, _word(X, m.group(2), at(2)))
        elif m.group(3) is not None:
            f = s(X, _word(X, m.group(3), at(3)))
        else:
            F = [_word(X, w, at(4)) for w in m.group(4).split(",") if w.strip()]
            f = E(X, F, _word(X, m.group(5), at(5)))
        out = f if out is None else sx_mul(X, out, f)
        pos += len(part.encode()) + 1
    return out
