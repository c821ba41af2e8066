"""Write a zeros file (imaginary parts of the first N nontrivial zeros).

The ordinates come from mpmath's ``zetazero``, an implementation independent of
this package; the file is then treated as external data by the tests.

    python scripts/make_zeros_table.py 100 60 > tests/data/zeros100.txt
"""
import sys

import mpmath


def main(count: int, digits: int) -> None:
    mpmath.mp.dps = digits + 15
    print(f"# imaginary parts of the first {count} nontrivial zeros of zeta")
    print(f"# source: mpmath {mpmath.__version__} zetazero, {digits} significant digits")
    for n in range(1, count + 1):
        t = mpmath.zetazero(n).imag
        print(mpmath.nstr(t, digits, strip_zeros=False))


if __name__ == "__main__":
    main(int(sys.argv[1]), int(sys.argv[2]))
