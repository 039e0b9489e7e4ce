#!/usr/bin/env python3
"""Walk one instance through the whole base-algebra pipeline.

Builds the chosen instance, prints its generator presentation, decomposes
a seeded random degree-zero monomial over the generators, and shows the
localized preimage witness of each invertible generator.
"""

import argparse
import random

from hopfgen.generic_base import (
    decompose,
    gamma_generators,
    niceness_witnesses,
)
from hopfgen.hopf import e_algebra, taft
from hopfgen.tring import t_ring


def build(family: str, n: int):
    if family == "taft":
        return taft(n)
    if family == "e":
        return e_algebra(n)
    raise SystemExit(f"unknown family {family!r}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--family", choices=("taft", "e"), default="taft")
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    h = build(args.family, args.n)
    ring = t_ring(h)
    pres = gamma_generators(h)
    print(f"{h.name}: {len(pres.invertible_gens)} invertible generators, "
          f"{len(pres.plain_gens)} nilpotent-side generators")
    for g in pres.invertible_gens:
        print(f"  unit: {g.to_text()}")
    for g in pres.plain_gens:
        print(f"  gen : {g.to_text()}")

    rng = random.Random(args.seed)
    elem = ring.element({ring.monomial(()): ring.field.one})
    for g in pres.invertible_gens:
        elem = elem * g ** rng.randint(-2, 2)
    for g in pres.plain_gens:
        e = rng.randint(0, 1)
        if e:
            elem = elem * g
    print(f"\nseeded degree-zero monomial: {elem.to_text()}")
    wit = decompose(h, elem)[0]
    print(f"  invertible exponents: {wit.invertible_exps}")
    print(f"  plain exponents:      {wit.plain_exps}")
    print(f"  remultiplies exactly: {wit.remultiply() == elem}")

    print("\nlocalized preimage witnesses")
    wits = niceness_witnesses(h)
    for gen in pres.invertible_gens:
        word, den = wits[gen]
        dens = ", ".join("*".join(map(str, tag)) for tag in den.entries) or "none"
        print(f"  {gen.to_text()}: {len(word.terms)} word(s), denominators: {dens}")


if __name__ == "__main__":
    main()
