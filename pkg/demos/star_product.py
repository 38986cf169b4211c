"""The deformation star product on the torus skein algebra.

Stacking a representative of alpha over one of beta and expanding the
bracket under t = e^h gives

    alpha * beta = sum over k of lambda_k(alpha, beta) h^k.

The order-0 term is the commutative character-ring product; the order-1
term is the crossing-sum (Goldman-type) bracket, antisymmetric; each
lambda_k flips by (-1)^k under swapping the factors.
"""

from kbracket import frac_str, normalize_torus_class, star


def T(a, b):
    return normalize_torus_class(a, b)


def show(alpha, beta, order=3):
    s = star(alpha, beta, order)
    print(f"{alpha} * {beta}:")
    for k in range(order + 1):
        print(f"  lambda_{k} = {s.coefficient(k).render(frac_str)}")
    print()


def main():
    print("Star products of torus curve classes:\n")
    show(T(1, 0), T(0, 1))
    show(T(0, 1), T(1, 0))
    print("(compare term by term: even orders match, odd orders flip sign)\n")
    show(T(1, 2), T(2, 1), order=2)
    show(T(2, 0), T(0, 1), order=2)


if __name__ == "__main__":
    main()
