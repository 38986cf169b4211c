"""Compute exact brackets of a few small diagrams.

The bracket of a diagram with c crossings is a sum over its 2^c
resolutions: each state contributes (-t)^(zeta - iota) times
(-t^2 - t^-2) per trivial circle, on the basis element given by the
essential components.  Everything below is exact Laurent-polynomial
arithmetic.
"""

from kbracket import bracket, from_braid, kink_chain, superpose, torus_multicurve


def show(title, d):
    print(f"{title}  ({d.num_crossings()} crossings)")
    print(f"  <D> = {bracket(d).render()}")
    print()


def main():
    print("Brackets on the annulus (braid closures):\n")
    show("closure of the 1-strand braid (the core circle)", from_braid(1, []))
    show("Hopf-link closure, sigma_1^2 on 2 strands", from_braid(2, [1, 1]))
    show("trefoil closure, sigma_1^3 on 2 strands", from_braid(2, [1, 1, 1]))
    show("figure-8-like closure, (sigma_1 sigma_2^-1)^2 on 3 strands",
         from_braid(3, [1, -2, 1, -2]))

    print("A chain of kinks (each kink contributes a factor t^-3):\n")
    for i in range(4):
        show(f"kink_chain({i})", kink_chain(i))

    print("Geodesic multicurves stacked on the torus:\n")
    show("(1,0) over (0,1)",
         superpose(torus_multicurve(1, 1, 0), torus_multicurve(1, 0, 1)))
    show("2*(1,0) over (1,2)",
         superpose(torus_multicurve(2, 1, 0), torus_multicurve(1, 1, 2)))


if __name__ == "__main__":
    main()
