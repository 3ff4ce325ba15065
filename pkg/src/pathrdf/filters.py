"""Filter expressions and their total, three-valued-collapsed evaluation."""

from __future__ import annotations

import operator
import re
from dataclasses import dataclass
from typing import Mapping, Union

from .terms import VARIABLE, Term, format_term, numeric_value


@dataclass(frozen=True)
class Compare:
    op: str
    left: Term
    right: Term


@dataclass(frozen=True)
class Regex:
    target: Term
    pattern: str
    flags: str = ""


@dataclass(frozen=True)
class Bound:
    variable: Term


@dataclass(frozen=True)
class And:
    left: "FilterExpr"
    right: "FilterExpr"


@dataclass(frozen=True)
class Or:
    left: "FilterExpr"
    right: "FilterExpr"


@dataclass(frozen=True)
class Not:
    inner: "FilterExpr"


@dataclass(frozen=True)
class Truth:
    value: bool = True


FilterExpr = Union[Compare, Regex, Bound, And, Or, Not, Truth]

_ORDER = {
    "<": operator.lt,
    "<=": operator.le,
    ">": operator.gt,
    ">=": operator.ge,
}


class _TypeError(Exception):
    pass


def filter_variables(k: FilterExpr) -> set[str]:
    if isinstance(k, Compare):
        return {t.lexical for t in (k.left, k.right) if t.kind == VARIABLE}
    if isinstance(k, Regex):
        return {k.target.lexical} if k.target.kind == VARIABLE else set()
    if isinstance(k, Bound):
        return {k.variable.lexical}
    if isinstance(k, (And, Or)):
        return filter_variables(k.left) | filter_variables(k.right)
    if isinstance(k, Not):
        return filter_variables(k.inner)
    return set()


def eval_filter(sigma: Mapping[str, Term | None], k: FilterExpr) -> bool:
    """True iff ``k`` evaluates to true under ``sigma``.

    Unbound variables and type errors make the whole condition not true
    (``bound`` excepted), so evaluation never raises.
    """
    try:
        return _eval(sigma, k)
    except _TypeError:
        return False


def _value(sigma, t: Term) -> Term:
    if t.kind == VARIABLE:
        v = sigma.get(t.lexical)
        if v is None:
            raise _TypeError(f"unbound {t}")
        return v
    return t


def _eval(sigma, k) -> bool:
    if isinstance(k, Truth):
        return k.value
    if isinstance(k, Bound):
        return sigma.get(k.variable.lexical) is not None
    if isinstance(k, Not):
        return not _eval(sigma, k.inner)
    if isinstance(k, And):
        return _eval(sigma, k.left) and _eval(sigma, k.right)
    if isinstance(k, Or):
        # an error on one side does not hide a true on the other
        try:
            if _eval(sigma, k.left):
                return True
        except _TypeError:
            return _eval(sigma, k.right)
        return _eval(sigma, k.right)
    if isinstance(k, Regex):
        target = _value(sigma, k.target)
        flags = re.IGNORECASE if "i" in k.flags else 0
        try:
            return re.search(k.pattern, target.lexical, flags) is not None
        except re.error as exc:
            raise _TypeError(str(exc)) from exc
    if isinstance(k, Compare):
        a, b = _value(sigma, k.left), _value(sigma, k.right)
        na, nb = numeric_value(a), numeric_value(b)
        if k.op in ("=", "!="):
            same = (na == nb) if (na is not None and nb is not None) else (a == b)
            return same if k.op == "=" else not same
        fn = _ORDER.get(k.op)
        if fn is None:
            raise _TypeError(f"unknown operator {k.op}")
        if na is not None and nb is not None:
            return fn(na, nb)
        if (na is None) != (nb is None) or a.kind != b.kind:
            raise _TypeError("incomparable operands")
        return fn(a.lexical, b.lexical)
    raise _TypeError(f"not a filter expression: {k!r}")


def format_filter(k: FilterExpr) -> str:
    if isinstance(k, Truth):
        return "TRUE" if k.value else "FALSE"
    if isinstance(k, Bound):
        return f"bound({format_term(k.variable)})"
    if isinstance(k, Not):
        return f"!({format_filter(k.inner)})"
    if isinstance(k, And):
        return f"({format_filter(k.left)} && {format_filter(k.right)})"
    if isinstance(k, Or):
        return f"({format_filter(k.left)} || {format_filter(k.right)})"
    if isinstance(k, Regex):
        pat = k.pattern.replace("\\", "\\\\").replace('"', '\\"')
        extra = f', "{k.flags}"' if k.flags else ""
        return f'regex({format_term(k.target)}, "{pat}"{extra})'
    if isinstance(k, Compare):
        return f"{format_term(k.left, short=True)} {k.op} {format_term(k.right, short=True)}"
    raise TypeError(k)
