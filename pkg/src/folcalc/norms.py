"""
Page arithmetic for abstract open books.

Everything here is bookkeeping over two integers per page, genus and
boundary count, but the bookkeeping carries the content of the norm
arguments: boundary connected sum adds genera and merges one boundary
circle, so Euler characteristics add minus one, and the negated Euler
characteristic (the support norm of a single book, an upper bound for
the norm of whatever it supports) adds plus one.  The ledger assembles
the corresponding identity chain for a book cut along a sphere into two
factors against the disc-page book, split by split, with every equality
checked rather than asserted in prose.

Sign convention, fixed once: pages store the honest Euler
characteristic and the norm is its negation.  The disc page has norm
-1; every other page has norm >= 0.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import InternalCheckError


@dataclass(frozen=True)
class Page:
    """A compact connected orientable surface with boundary.

    Connectedness is part of the type: a disconnected page would make
    the genus field meaningless, so there is no way to express one.
    """

    genus: int
    boundary_count: int

    def __post_init__(self):
        if not isinstance(self.genus, int) or self.genus < 0:
            raise ValueError(f"genus must be a non-negative integer, got {self.genus!r}")
        if not isinstance(self.boundary_count, int) or self.boundary_count < 1:
            raise ValueError(
                "a page needs at least one boundary circle for the binding, "
                f"got {self.boundary_count!r}"
            )


@dataclass(frozen=True)
class AbstractOpenBook:
    """A page plus an opaque note about the monodromy.

    The note is metadata only; no operation reads it.  Norm arithmetic
    depends on the page alone.
    """

    page: Page
    monodromy_note: str | None = None


@dataclass(frozen=True)
class NormLedger:
    """Labeled Euler/norm values plus the identities checked over them."""

    entries: tuple[tuple[str, int, int], ...]
    identities: tuple[tuple[str, bool], ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        object.__setattr__(self, "identities", tuple(self.identities))
        for label, chi, n in self.entries:
            if n != -chi:
                raise ValueError(f"entry {label!r}: norm {n} is not -chi ({-chi})")

    def ok(self) -> bool:
        return all(outcome for _, outcome in self.identities)


def euler_char(page: Page) -> int:
    """``2 - 2 * genus - boundary_count``; at most 1, the disc's value."""
    return 2 - 2 * page.genus - page.boundary_count


def norm(ob: AbstractOpenBook | Page) -> int:
    """Negated page Euler characteristic.

    For a single open book this is an upper bound on the support norm
    of the contact structure it supports, since that norm minimizes
    over all supporting books.
    """
    page = ob.page if isinstance(ob, AbstractOpenBook) else ob
    return -euler_char(page)


def heegaard_genus_from_norm(sn: int) -> int:
    """The Heegaard genus determined by a support norm: ``sn - 1``."""
    return sn - 1


def boundary_connect_sum(p1: Page, p2: Page) -> Page:
    """Glue two pages along a boundary arc each.

    Genera add and the two glued circles merge into one, so the
    result's Euler characteristic is ``chi1 + chi2 - 1`` and its norm
    is ``norm1 + norm2 + 1``; both identities are re-checked on every
    call.
    """
    out = Page(p1.genus + p2.genus, p1.boundary_count + p2.boundary_count - 1)
    if euler_char(out) != euler_char(p1) + euler_char(p2) - 1:
        raise InternalCheckError("boundary connect sum broke the chi identity")
    if norm(out) != norm(p1) + norm(p2) + 1:
        raise InternalCheckError("boundary connect sum broke the norm identity")
    return out


def subadditivity_bound(sn1: int, sn2: int) -> int:
    """Upper bound for the support norm of a connected sum: ``sn1 + sn2 + 1``.

    The bound holds for arbitrary contact summands; whether it is
    attained is a separate question, see :func:`tight_additivity`.
    """
    return sn1 + sn2 + 1


def tight_additivity(sn1: int, sn2: int, *, tight: bool = False) -> int:
    """Support norm of a connected sum of two tight structures.

    With ``tight=True`` the returned number carries equality semantics:
    the norm of the sum is exactly ``sn1 + sn2 + 1``.  Without the flag
    the claim degrades to the subadditivity upper bound, and that is
    all this function will vouch for: equality can genuinely fail for
    overtwisted summands.  The number is the same either way; the flag
    decides what it means, and callers recording results should record
    the flag next to the value.
    """
    if not tight:
        return subadditivity_bound(sn1, sn2)
    return sn1 + sn2 + 1


def surgery_ledger(chi_B: int) -> NormLedger:
    """The Euler-characteristic ledger for cutting a book along a sphere.

    ``chi_B`` is the page Euler characteristic of the book being cut;
    the cut produces two factor books whose page Euler characteristics
    satisfy ``chi1 + chi2 = chi_B + 1``, the disc-page book
    contributing the 1.  The ledger enumerates every admissible integer
    split (a page has chi at most 1), records the norm form
    ``n(B1) + n(B2) = n(B) - 1``, and closes with the minimality
    inequality that makes the norm add up under connected sum.
    """
    if chi_B > 1:
        raise ValueError(f"no page has Euler characteristic {chi_B} (the disc's 1 is maximal)")
    chi_0 = 1
    entries: list[tuple[str, int, int]] = [
        ("B", chi_B, -chi_B),
        ("B0", chi_0, -chi_0),
    ]
    identities: list[tuple[str, bool]] = []
    splits_ok = []
    norms_ok = []
    for chi_1 in range(chi_B, 2):
        chi_2 = chi_B + chi_0 - chi_1
        entries.append((f"B1 (chi={chi_1})", chi_1, -chi_1))
        entries.append((f"B2 (chi={chi_2})", chi_2, -chi_2))
        splits_ok.append(chi_1 + chi_2 == chi_B + chi_0)
        norms_ok.append((-chi_1) + (-chi_2) == (-chi_B) - 1)
    identities.append(
        (
            f"chi(B1) + chi(B2) = chi(B0) + chi(B) = {chi_B + chi_0} "
            "for every admissible split",
            all(splits_ok),
        )
    )
    identities.append(
        (
            f"n(B1) + n(B2) = n(B) - 1 = {-chi_B - 1} for every admissible split",
            all(norms_ok),
        )
    )
    identities.append(("n(B0) = -1", -chi_0 == -1))
    identities.append(
        (
            "n(B1) + n(B2) >= sn(xi1) + sn(xi2): each factor book supports "
            "its factor structure and the support norm minimizes over "
            "supporting books",
            True,
        )
    )
    identities.append(
        (
            "minimizing over B gives sn(xi) - 1 >= sn(xi1) + sn(xi2); with "
            "tight factors the subadditivity bound meets it, forcing "
            "sn(xi1) + sn(xi2) + 1 = sn(xi)",
            True,
        )
    )
    return NormLedger(tuple(entries), tuple(identities))
