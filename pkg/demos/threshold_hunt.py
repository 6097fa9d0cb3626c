"""Chase the regularity floor of the critical scenarios across dimensions.

In dimensions 3 and 4 the floor lands on a short rational and the engine
names it exactly.  From dimension 5 on, no rational with a small
denominator fits inside the certified enclosure, so the engine reports a
shrinking interval instead.  This script prints both behaviours side by
side and shows the enclosure narrowing as the tolerance drops.

Run with:  python3 demos/threshold_hunt.py
"""

from __future__ import annotations

from uniq_regions import (
    UndecidableAtPrecision,
    exact_threshold,
    format_rational,
    rat,
    s0,
    simplest_in,
)


def main() -> None:
    for n in (3, 4):
        floor = exact_threshold(n)
        print(f"n = {n}: regularity floor is exactly {format_rational(floor)}")

    print()
    for n in (5, 6):
        try:
            exact_threshold(n)
        except UndecidableAtPrecision as exc:
            lo, hi = exc.enclosure
            guess = simplest_in(lo, hi)
            print(f"n = {n}: no short rational; simplest candidate in the "
                  f"enclosure is {format_rational(guess)} "
                  f"(denominator {guess.denominator})")

    print()
    print("Enclosure of the n = 5 floor at decreasing tolerances:")
    for k in (3, 6, 9, 12):
        lo, hi = s0(5, rat(1, 10**k))
        print(f"  tol 1e-{k:<2d} width {format_rational(hi - lo)}")
        print(f"           [{format_rational(lo)}, {format_rational(hi)}]")


if __name__ == "__main__":
    main()
