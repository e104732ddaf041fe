"""The ladder families X_n, Y_n, the column function and exact volume arithmetic.

X_n has f(n) columns of height hx(n)*f(n) with rungs every hx(n) rows; Y_n is the
same with spacing hy(n). The paper schedule uses hx(n) = 2**2**(2n) and
hy(n) = hx(n)**2, far beyond anything materializable for n >= 3, so schedules are
pluggable and every inequality is checked on exact Python integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator

from .graph import DEFAULT_MATERIALIZATION_CAP, Graph, InstanceTooLarge, LadderSpec, build_ladder

# 2**(2**26) already has 8 MiB of digits
MAX_EXPONENT_BITS = 2**26


class ColumnFunctionError(ValueError):
    pass


class PreconditionError(ValueError):
    pass


def _smallest_prime_factor(n: int) -> int:
    if n % 2 == 0:
        return 2
    p = 3
    while p * p <= n:
        if n % p == 0:
            return p
        p += 2
    return n


@lru_cache(maxsize=None)
def _prime_index(p: int) -> int:
    """1-based position of the prime ``p`` in 2, 3, 5, 7, ..."""
    return sum(1 for q in range(2, p + 1) if _smallest_prime_factor(q) == q)


def f_default(n: int) -> int:
    """1 for n = 1, otherwise the index of the smallest prime factor of n, plus one."""
    if n < 1:
        raise ValueError("f is defined on n >= 1")
    if n == 1:
        return 1
    return _prime_index(_smallest_prime_factor(n)) + 1


@dataclass(frozen=True)
class ColumnFunction:
    """Column count rule, checked against f(1) = 1 and 2 <= f(n) <= n on every call."""

    rule: Callable[[int], int] = field(compare=False)
    name: str = "custom"

    def __call__(self, n: int) -> int:
        k = self.rule(n)
        if n == 1 and k != 1:
            raise ColumnFunctionError(f"{self.name}: f(1) = {k}, must be 1")
        if n >= 2 and not 2 <= k <= n:
            raise ColumnFunctionError(f"{self.name}: f({n}) = {k} violates 2 <= f(n) <= n")
        return k


COLUMN_FUNCTIONS: dict[str, ColumnFunction] = {"default": ColumnFunction(f_default, "default")}


def get_column_function(name: str) -> ColumnFunction:
    try:
        return COLUMN_FUNCTIONS[name]
    except KeyError:
        raise ValueError(f"unknown column function {name!r}; known: {sorted(COLUMN_FUNCTIONS)}") from None


def _tower(e: int) -> int:
    if e > MAX_EXPONENT_BITS:
        raise OverflowError(f"2**{e} is too large to evaluate")
    return 1 << e


@dataclass(frozen=True)
class HeightSchedule:
    """Rung spacings ``hx(n)`` for X_n and ``hy(n)`` for Y_n."""

    name: str
    hx: Callable[[int], int] = field(compare=False)
    hy: Callable[[int], int] = field(compare=False)

    def check(self, n: int) -> None:
        if not 1 <= self.hx(n) <= self.hy(n):
            raise ValueError(f"schedule {self.name}: need 1 <= hx({n}) <= hy({n})")


def paper_schedule() -> HeightSchedule:
    return HeightSchedule("paper", hx=lambda n: _tower(2 ** (2 * n)), hy=lambda n: _tower(2 ** (2 * n + 1)))


def toy_schedule(base: int, offset: int = 0) -> HeightSchedule:
    """hx(n) = base**(n - offset), hy(n) = hx(n)**2.

    ``offset`` may be 0 or 1 (so that hx(1) >= 1); offset 1 with base 2 makes X_2, Y_2
    the ladders (2, 2, 2) and (2, 4, 2).
    """
    if base < 2:
        raise ValueError("toy schedule base must be >= 2")
    if offset not in (0, 1):
        raise ValueError("toy schedule offset must be 0 or 1")
    name = f"toy:{base}" if offset == 0 else f"toy:{base}:{offset}"
    return HeightSchedule(name, hx=lambda n: base ** (n - offset), hy=lambda n: base ** (2 * (n - offset)))


def parse_schedule(text: str) -> HeightSchedule:
    """``paper``, ``toy:<base>`` or ``toy:<base>:<offset>``."""
    if text == "paper":
        return paper_schedule()
    parts = text.split(":")
    if parts[0] == "toy" and len(parts) in (2, 3) and all(p.isdigit() for p in parts[1:]):
        return toy_schedule(int(parts[1]), int(parts[2]) if len(parts) == 3 else 0)
    raise ValueError(f"bad schedule {text!r}: expected 'paper' or 'toy:<base>[:<offset>]'")


@dataclass(frozen=True)
class FamilyConfig:
    schedule: HeightSchedule = field(default_factory=paper_schedule)
    colfn: ColumnFunction = field(default_factory=lambda: COLUMN_FUNCTIONS["default"])
    cap: int = DEFAULT_MATERIALIZATION_CAP

    def f(self, n: int) -> int:
        return self.colfn(n)

    def hx(self, n: int) -> int:
        return self.schedule.hx(n)

    def hy(self, n: int) -> int:
        return self.schedule.hy(n)


PAPER = FamilyConfig()


def toy_config(base: int = 2, offset: int = 0) -> FamilyConfig:
    return FamilyConfig(schedule=toy_schedule(base, offset))


def x_spec(n: int, cfg: FamilyConfig = PAPER) -> LadderSpec:
    k = cfg.f(n)
    return LadderSpec(columns=k, spacing=cfg.hx(n), segments=k)


def y_spec(n: int, cfg: FamilyConfig = PAPER) -> LadderSpec:
    k = cfg.f(n)
    return LadderSpec(columns=k, spacing=cfg.hy(n), segments=k)


def vol_X(n: int, cfg: FamilyConfig = PAPER) -> int:
    k = cfg.f(n)
    return (cfg.hx(n) * k + 1) * k


def vol_Y(n: int, cfg: FamilyConfig = PAPER) -> int:
    k = cfg.f(n)
    return (cfg.hy(n) * k + 1) * k


def _build(n: int, cfg: FamilyConfig, which: str) -> Graph:
    cfg.schedule.check(n)
    vol = vol_X(n, cfg) if which == "x" else vol_Y(n, cfg)
    if vol > cfg.cap:
        raise InstanceTooLarge(vol, cfg.cap)
    spec = x_spec(n, cfg) if which == "x" else y_spec(n, cfg)
    return build_ladder(spec, family=n, prefix=which, name=f"{which.upper()}{n}", cap=cfg.cap)


@lru_cache(maxsize=64)
def build_X(n: int, cfg: FamilyConfig = PAPER) -> Graph:
    return _build(n, cfg, "x")


@lru_cache(maxsize=64)
def build_Y(n: int, cfg: FamilyConfig = PAPER) -> Graph:
    return _build(n, cfg, "y")


def in_I_k(n: int, k: int, cfg: FamilyConfig = PAPER) -> bool:
    """Whether vol_X(n) belongs to I_k, i.e. f(n) = k."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return cfg.f(n) == k


def I_k_indices(k: int, cfg: FamilyConfig = PAPER, start: int = 1) -> Iterator[int]:
    if k < 1:
        raise ValueError("k must be >= 1")
    n = start
    while True:
        if cfg.f(n) == k:
            yield n
        n += 1


def enumerate_I_k(k: int, count: int, cfg: FamilyConfig = PAPER) -> list[int]:
    """First ``count`` elements vol_X(n) of I_k, in increasing n.

    Under the paper schedule only the first few are representable at all.
    """
    out = []
    for n in I_k_indices(k, cfg):
        if len(out) == count:
            break
        out.append(vol_X(n, cfg))
    return out


@dataclass
class Report:
    """Outcome of a batch of exact integer checks."""

    name: str
    checks: list[tuple[str, bool]] = field(default_factory=list)

    def add(self, label: str, holds: bool) -> None:
        self.checks.append((label, bool(holds)))

    @property
    def ok(self) -> bool:
        return all(h for _, h in self.checks)

    def __str__(self) -> str:
        lines = [f"{self.name}: {'PASS' if self.ok else 'FAIL'}"]
        lines += [f"  [{'ok' if h else 'FAIL'}] {label}" for label, h in self.checks]
        return "\n".join(lines)


def verify_lower_bound_arithmetic(n: int, m: int, cfg: FamilyConfig = PAPER) -> Report:
    """Exact checks behind ruling out an image in a component Y_m with m < n.

    With d = 2**(2n) - 2**(2m+1), verifies 2**d > m**2, m**2 < 2**2**(2m),
    2**d >= 2**2**(2m+1), and the pigeonhole ratio bound
    hx(n) f(n)**2 / (hy(m) f(m)**2) > f(n) - 1 together with the exact volume
    ratio vol_X(n) / vol_Y(m) > f(n) - 1, both by cross-multiplication.
    """
    if not 1 <= m < n:
        raise PreconditionError(f"need 1 <= m < n, got m={m}, n={n}")
    fn, fm = cfg.f(n), cfg.f(m)
    d = 2 ** (2 * n) - 2 ** (2 * m + 1)
    gap = _tower(d)
    rep = Report(f"lower-bound arithmetic (n={n}, m={m})")
    rep.add(f"2^(2^{2 * n} - 2^{2 * m + 1}) > m^2", gap > m * m)
    rep.add(f"m^2 < 2^(2^{2 * m})", m * m < _tower(2 ** (2 * m)))
    rep.add(f"2^(2^{2 * n} - 2^{2 * m + 1}) >= 2^(2^{2 * m + 1})", d >= 2 ** (2 * m + 1))
    rep.add(
        "hx(n) f(n)^2 > (f(n) - 1) hy(m) f(m)^2",
        cfg.hx(n) * fn * fn > (fn - 1) * cfg.hy(m) * fm * fm,
    )
    rep.add("vol_X(n) > (f(n) - 1) vol_Y(m)", vol_X(n, cfg) > (fn - 1) * vol_Y(m, cfg))
    return rep


def verify_theorem_constants(n: int, cfg: FamilyConfig = PAPER) -> Report:
    """hy(n) >= (vol_X(n) / (f(n)(f(n)+1)))**2, plus the girth comparison it rests on."""
    if n < 2:
        raise PreconditionError("n must be >= 2 (f(1) = 1 is degenerate)")
    fn = cfg.f(n)
    hy, vx = cfg.hy(n), vol_X(n, cfg)
    rep = Report(f"theorem constants (n={n})")
    rep.add("hy(n) (f(n)(f(n)+1))^2 >= vol_X(n)^2", hy * (fn * (fn + 1)) ** 2 >= vx * vx)
    rep.add("2 hy(n) + 1 >= hy(n)", 2 * hy + 1 >= hy)
    rep.add("girth of Y_n, 2 hy(n) + 2, exceeds 2 hy(n) + 1", 2 * hy + 2 > 2 * hy + 1)
    if cfg.schedule.name == "paper":
        rep.add("hy(n) = 2^(2^(2n+1))", hy == _tower(2 ** (2 * n + 1)))
    return rep


def verify_upper_bound_chain(n: int, cfg: FamilyConfig = PAPER) -> Report:
    """Every inequality of the two upper-bound chains, on exact integers."""
    if n < 2:
        raise PreconditionError("n must be >= 2 (f(1) = 1 is degenerate)")
    fn, hx, vx = cfg.f(n), cfg.hx(n), vol_X(n, cfg)
    t2n = _tower(2 ** (2 * n))
    t2n1 = _tower(2 ** (2 * n - 1))
    small_total = sum(vol_Y(i, cfg) for i in range(1, n))
    rep = Report(f"upper-bound chain (n={n})")
    rep.add("sum_{i<n} vol_Y(i) <= (2^(2^(2n-1))(n-1)+1)(n-1)^2", small_total <= (t2n1 * (n - 1) + 1) * (n - 1) ** 2)
    rep.add("(2^(2^(2n-1))(n-1)+1)(n-1)^2 <= 2^(2^(2n))", (t2n1 * (n - 1) + 1) * (n - 1) ** 2 <= t2n)
    rep.add("2^(2^(2n)) <= vol_X(n)", t2n <= vx)
    rep.add("vol(r(X_n)) = hx(n)f(n)+1 <= vol_X(n)", hx * fn + 1 <= vx)
    rep.add("hx(n)f(n) + 1 + 2^(2^(2n)) <= hx(n)f(n)^2 + 1", hx * fn + 1 + t2n <= hx * fn * fn + 1)
    rep.add("hx(n)f(n)^2 + 1 <= vol_X(n)", hx * fn * fn + 1 <= vx)
    rep.add("zeta' total vol_X(n) + vol_X(n) <= 2 vol_X(n)", vx + vx <= 2 * vx)
    return rep


def verify_phi_precondition(n: int, cfg: FamilyConfig = PAPER, horizon: int = 1) -> Report:
    """2 vol_X(n) < hx(n') for n < n' <= n + horizon.

    Any piece re-embedded at a larger index has at most vol_X(n) vertices, so this
    is what the compact re-embedding needs.
    """
    rep = Report(f"phi precondition (n={n})")
    for k in range(n + 1, n + horizon + 1):
        rep.add(f"2 vol_X({n}) < hx({k})", 2 * vol_X(n, cfg) < cfg.hx(k))
    return rep
