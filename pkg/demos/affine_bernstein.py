"""Affine Hecke algebra of type A1: Bernstein basis, involutions and specialization."""

from peterweyl import affine


def show(text):
    x = affine.parse_expression(text)
    print(f"{text}")
    print(f"  T basis:         {x}")
    print(f"  Bernstein basis: {x.bernstein_str()}")
    print(f"  bullet:          {affine.bullet(x)}")
    print(f"  star:            {affine.star_affine(x)}")


def main():
    for text in ("T[s0]", "Th[1]*T[s1]", "Th[1]*Th[-1]", "T[s1]*Th[2] - Th[-2]*T[s1]"):
        show(text)

    print("Bernstein quotient (Th[x] - Th[s1 x]) / (1 - Th[-1]):")
    for x in range(-2, 3):
        print(f"  x={x:+d}: {affine.bernstein_quotient(x)}  relation holds: {affine.verify_bernstein_relation(x)}")

    spec = affine.parse_expression("T[s1]*T[s1]").specialize(3)
    print("T[s1]*T[s1] at q=3:", {str(w): str(c) for w, c in spec.items()})


if __name__ == "__main__":
    main()
