"""Built-in regression fixtures.

Eight example curves with independently known local data: five
hyperelliptic curves of genus 2..6 that are semistable everywhere, two
hyperelliptic curves needing a local-data override at one prime (the
reduction there is only semistable after a field extension, so the
local factor and conductor exponent are supplied, not computed), and
one superelliptic cubic model whose bad primes are both overridden.

Expected inverse local factors are stored as ascending coefficient
tuples of the polynomial in T = p^{-s}; entries marked with a
truncation degree compare only up to that degree (the cutoff M makes
higher coefficients irrelevant).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .intpoly import IntPoly


@dataclass(frozen=True)
class Fixture:
    name: str
    kind: str                      # "hyperelliptic" | "cubic"
    genus: int
    g: "tuple[int, ...] | None"
    h: "tuple[int, ...] | None"
    f: "tuple[int, ...] | None"
    overrides: dict = field(default_factory=dict)
    # p -> (coeffs ascending, f_p, truncated_at or None)
    expected_factors: dict = field(default_factory=dict)
    conductor: int = 0
    root_number: int = 0
    M: "int | None" = None         # forced cutoff for reproduction runs

    def g_poly(self) -> IntPoly:
        return IntPoly.of(self.g)

    def h_poly(self) -> IntPoly:
        return IntPoly.of(self.h)

    def f_poly(self) -> IntPoly:
        return IntPoly.of(self.f)


GENUS2_FIVE_BAD = Fixture(
    name="genus2-N1382892",
    kind="hyperelliptic",
    genus=2,
    g=(-1, -3, -3, -3, -3, 1),
    h=(1, 3, 1),
    f=None,
    expected_factors={
        2: ((1, 0, 1), 2, None),
        3: ((1, 0, 2, 3), 1, None),
        7: ((1, 2, 4, -7), 1, None),
        101: ((1, 4, 104, 101), 1, None),
        163: ((1, 10, 152, -163), 1, None),
    },
    conductor=2**2 * 3 * 7 * 101 * 163,
    root_number=1,
)

GENUS3_FOUR_BAD = Fixture(
    name="genus3-N483516",
    kind="hyperelliptic",
    genus=3,
    g=(-1, 0, 0, 2, 2, 2, 1, 1),
    h=(2, 1, 1, -1),
    f=None,
    expected_factors={
        2: ((1, -1, 1, 1, -2), 2, None),
        3: ((1, 1, -1, -1), 3, None),
        11: ((1, -2, 4, 18, 11), 2, None),
        37: ((1, 3, 10, 134, 1221, -1369), 1, None),
    },
    conductor=2**2 * 3**3 * 11**2 * 37,
    root_number=1,
)

GENUS4_FOUR_BAD = Fixture(
    name="genus4-N5071941",
    kind="hyperelliptic",
    genus=4,
    g=(0, 1, 2, 2, -2, 0, 0, 1, -2, 1),
    h=(-1, -1, -2, 1, -2),
    f=None,
    expected_factors={
        3: ((1, 2, 3, 4, 5, -6, -9), 2, None),
        7: ((1, 3, 7, 1, 3, 7), 3, None),
        31: ((1, -1, 51, -15, 1545, -1581, 29791, -29791), 1, None),
        53: ((1, 4, 32, 699, 2207, 9964, 157304, 148877), 1, None),
    },
    conductor=3**2 * 7**3 * 31 * 53,
    root_number=1,
)

GENUS5_FOUR_BAD = Fixture(
    name="genus5-N3264907177",
    kind="hyperelliptic",
    genus=5,
    g=(0, -2, -3, 2, 3, 0, 0, 0, 0, 0, 0, 1),
    h=(1, 3, 1, -3),
    f=None,
    expected_factors={
        7: ((1, -1, -12, 12, 134, -134, -588, 588, 2401, -2401), 1, None),
        227: ((1, 14, 213), 1, 2),
        1277: ((1, -34), 1, 1),
        1609: ((1, -25), 1, 1),
    },
    conductor=7 * 227 * 1277 * 1609,
    root_number=1,
    M=1112661,
)

GENUS6_SIX_BAD = Fixture(
    name="genus6-N32906536663",
    kind="hyperelliptic",
    genus=6,
    g=(0, 0, 0, 1, 1, 1, -1, -1, 1, 1, 1, 1, 1, 1),
    h=(1, 1, 1, -1, 0, 1, 1),
    f=None,
    expected_factors={
        7: ((1, 1, 4, 27, 39, 138, 234, 1239, 2499, 1372, 16807, 16807),
            1, None),
        11: ((1, -2, -11, 14, 93, -319, 391, 3443, -7986, -54571, 117128,
              161051), 1, None),
        13: ((1, -3, 16, -40, 20, -262, 698, -9100, 33800, -70304, 257049,
              371293), 1, None),
        89: ((1, -6, 48, 277), 1, 3),
        431: ((1, 32, 890), 1, 2),
        857: ((1, -42, 1489), 1, 2),
    },
    conductor=7 * 11 * 13 * 89 * 431 * 857,
    root_number=1,
    M=2549728,
)

GENUS3_OVERRIDE5 = Fixture(
    name="genus3-N6147375-override5",
    kind="hyperelliptic",
    genus=3,
    g=(0, 1, 3, 1, -2, 0, -2, 1),
    h=(1, 2, 3, 3),
    f=None,
    overrides={5: ((1, 4, 8, 5), 3)},
    expected_factors={
        3: ((1, 0, -1, 3, 6, -9), 1, None),
        13: ((1, 5, 14, 5, 13), 2, None),
        97: ((1, 7, 84, 660, 9991, 9409), 1, None),
    },
    conductor=3 * 5**3 * 13**2 * 97,
    root_number=-1,
    M=55956,
)

GENUS4_OVERRIDE2 = Fixture(
    name="genus4-N20774912-override2",
    kind="hyperelliptic",
    genus=4,
    g=(0, 0, 0, 1, 0, 1, 0, 1, -1, 1),
    h=(1, 0, 0, 0, -1),
    f=None,
    overrides={2: ((1, 1, 2), 16)},
    expected_factors={
        317: ((1, -31, 959), 1, 2),
    },
    conductor=2**16 * 317,
    root_number=-1,
    M=101248,
)

CUBIC_QUARTIC = Fixture(
    name="cubic-N136048896",
    kind="cubic",
    genus=3,
    g=None,
    h=None,
    f=(1, 0, -1, 0, 1),
    overrides={2: ((1, 0, 2), 8), 3: ((1,), 12)},
    expected_factors={},
    conductor=2**8 * 3**12,
    root_number=1,
    M=274994,
)

ALL_FIXTURES = (
    GENUS2_FIVE_BAD,
    GENUS3_FOUR_BAD,
    GENUS4_FOUR_BAD,
    GENUS5_FOUR_BAD,
    GENUS6_SIX_BAD,
    GENUS3_OVERRIDE5,
    GENUS4_OVERRIDE2,
    CUBIC_QUARTIC,
)


def fixture_by_name(name: str) -> Fixture:
    for fx in ALL_FIXTURES:
        if fx.name == name:
            return fx
    raise KeyError(name)
