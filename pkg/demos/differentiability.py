"""Why the order-2 product coefficient is not a differential operator.

The order-2 coefficient of the star product splits into a top term
(an order-2 resolution operator followed by the order-0 loop projection)
and a loop-correction term (the order-1 loop projection phi_1 of the
stacked diagram).  The top term behaves like a second-order differential
operator; the correction term does not, and the witness below shows it.

phi_1 weighs each state by a coefficient that vanishes unless the state
produced at least one trivial circle.  On the one-crossing stacks
(1,0) over (0,1) no state ever produces a trivial circle, so phi_1
vanishes there.  But the value of phi_1 depends on the chosen diagram:
drawing the two parallel (1,0) curves with a bigon between them, the
states cutting the bigon produce a trivial circle and phi_1 is nonzero —
exactly the term a second-order differentiability identity cannot absorb.
"""

from kbracket import (
    FormalDiagramSum,
    class_rep,
    normalize_torus_class,
    phi_fn,
    phi_star,
    superpose,
    witness_stack,
)
from kbracket.statesum import full_state_data


def phi1(d):
    return phi_star(phi_fn(1), FormalDiagramSum.single(d))


def main():
    a10 = normalize_torus_class(1, 0)
    b01 = normalize_torus_class(0, 1)

    flat = superpose(class_rep(a10), class_rep(b01))
    print("(1,0) over (0,1), geodesic representatives:")
    for zeta, iota, mu, ess in full_state_data(flat):
        print(f"  state (zeta={zeta}, iota={iota}): {mu} trivial circles, "
              f"essential {ess}")
    print(f"  phi_1 = {phi1(flat).render()}\n")

    stack = witness_stack()
    print("two (1,0) curves bounding a bigon, over (0,1):")
    nontrivial = 0
    for zeta, iota, mu, ess in full_state_data(stack):
        if mu:
            nontrivial += 1
            print(f"  state (zeta={zeta}, iota={iota}): {mu} trivial "
                  f"circle(s), essential {ess}")
    print(f"  ({nontrivial} of 16 states produce trivial circles)")
    print(f"  phi_1 = {phi1(stack).render()}")
    print()
    print("The correction term vanishes on every two-curve stack but not")
    print("on this three-curve stack, so it fails the order-2 condition.")


if __name__ == "__main__":
    main()
