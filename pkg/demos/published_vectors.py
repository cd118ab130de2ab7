"""Recompute the published tuple data: primality, factorizations, lambda, order table, P(10^5)."""

from cyclomul.suites import example_checks


def main():
    for name, ok, detail in example_checks():
        print(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({detail})" if detail else ""))


if __name__ == "__main__":
    main()
