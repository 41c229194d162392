"""Direction-encoding bit strings for the 2-label, view-3 cycle scheme.

Labels read outward from the core spell ``S_inf = 001101001101...``. A length-5
window of that string (a *base string*) fixes which neighbour of its middle
node is the parent: the node under the second bit. The *tree string set* of a
base string lists every length-5 string a correctly labelled tree node may see
on the routes centred at it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

PERIOD = "001101"

BitString = str


class NotABaseString(ValueError):
    pass


class LengthExceeded(ValueError):
    pass


def is_substring_of_s_infinity(s: BitString) -> bool:
    if len(s) > len(PERIOD):
        raise LengthExceeded(f"substring queries are limited to length {len(PERIOD)}")
    if not s or set(s) - {"0", "1"}:
        raise ValueError(f"not a bit string: {s!r}")
    # two periods (minus one char) contain every window of length <= 6
    return s in PERIOD * 2


@lru_cache(maxsize=None)
def base_strings() -> frozenset[BitString]:
    doubled = PERIOD * 2
    return frozenset(doubled[i : i + 5] for i in range(len(PERIOD)))


@dataclass(frozen=True)
class TreeStringSet:
    base: BitString
    members: frozenset[BitString]

    def __contains__(self, s: BitString) -> bool:
        return s in self.members


@lru_cache(maxsize=None)
def tree_string_set(b: BitString) -> TreeStringSet:
    if b not in base_strings():
        raise NotABaseString(b)
    # A base string reads grandparent -> grandchild, so its reversal is
    # l-2 l-1 l0 l1 l2 with l-1 the child and l1 the parent.
    r = b[::-1]
    gc_gc = r[0] + r[1] + r[2] + r[1] + r[0]
    gc_cp = r[0] + r[1] + r[2] + r[3] + r[2]
    return TreeStringSet(b, frozenset({b, r, gc_gc, gc_cp, gc_cp[::-1]}))


# Golden data, row by row as published; tests compare it to tree_string_set.
TABLE3 = {
    "00110": frozenset({"00110", "01100", "01110", "01101", "10110"}),
    "01101": frozenset({"01101", "10110", "10101", "10111", "11101"}),
    "11010": frozenset({"11010", "01011", "01010"}),
    "10100": frozenset({"10100", "00101", "00100"}),
    "01001": frozenset({"01001", "10010", "10001"}),
    "10011": frozenset({"10011", "11001", "11011", "11000", "00011"}),
}


def bits_of(labels) -> BitString:
    return "".join("1" if x else "0" for x in labels)
