#!/usr/bin/env python3
"""Tour of rate-1/2 puncturing patterns for the 8-state 15/17 turbo code.

Builds both m-sequence derived pattern variants, shows the raw rows, the
per-column parity core weights they act on, and how each pattern classifies
(catastrophic / semi-catastrophic / normal).  Ends with the two hand-tuned
reference sets for comparison.
"""

from fractions import Fraction

from turbobound import (PcccPunctureSet, RscCode, classify, code_rate,
                        lfsr_sequence, pseudo_random_pattern,
                        punctured_core_weights, row_to_string,
                        weight2_parity_response)

CODE = RscCode.from_octals("15", "17")

# Hand-tuned reference sets, period 4 and period 2.
REF_A = ((0, 0, 1, 0), (1, 1, 0, 1), (1, 1, 1, 1))
REF_B = ((1, 1), (1, 0), (0, 1))


def show(title, pset):
    print(f"\n{title}")
    print(f"  sys  = {row_to_string(pset.sys)}")
    print(f"  par1 = {row_to_string(pset.par1)}")
    print(f"  par2 = {row_to_string(pset.par2)}")
    r = code_rate(pset)
    print(f"  rate = {r} ({float(r):.4f})")
    for tag, pat in (("c1", pset.constituent1()),
                     ("c2", pset.constituent2())):
        cls = classify(CODE, pat.p_u, pat.p_z)
        zc = punctured_core_weights(CODE, pat.p_z)
        print(f"  {tag}: {cls}, punctured core weights {list(zc)}")


def main():
    print(f"code: {CODE.label()}, {CODE.n_states} states, "
          f"period L = {CODE.period}")

    y = weight2_parity_response(CODE)
    print(f"weight-2 parity response over one period: "
          f"{''.join(map(str, y))} (core weight {sum(y)})")
    print(f"m-sequence from the feedback polynomial:   "
          f"{''.join(map(str, lfsr_sequence(CODE.feedback, CODE.period)))}")

    for variant in ("A", "B"):
        show(f"pseudo-random variant {variant}",
             pseudo_random_pattern(CODE, variant))

    show("reference set A (period 4)", PcccPunctureSet(*REF_A))
    show("reference set B (period 2)", PcccPunctureSet(*REF_B))

    # Sanity: every set above transmits exactly 2 bits per information bit.
    for rows in (REF_A, REF_B):
        assert code_rate(PcccPunctureSet(*rows)) == Fraction(1, 2)
    print("\nall four sets are rate 1/2")


if __name__ == "__main__":
    main()
