# Quaternion algebras through their discriminants
#
# An indefinite quaternion algebra over Q is determined by d, a product of an
# even number of primes. Only splitting facts are needed, and those come from
# local degrees.

# %%
from collections import Counter

from shimura_gate.fields import parse_field_spec
from shimura_gate.quaternion import (
    least_nonsplitting_completely_split_prime,
    shimura_genus,
    splits_over_abelian,
    splits_over_quadratic,
    valid_discriminants_below,
    validate_discriminant,
)

# %%
B10, B22 = validate_discriminant(10), validate_discriminant(22)
for m in (-3, -29, -53, -79):
    print(f"B_10 split by Q(sqrt({m})): {splits_over_quadratic(B10, m)}")

# %%
# The auxiliary prime q: split completely in k, with Q(sqrt(-q)) not splitting B.
for B in (B10, B22):
    for spec in ("biquad:-5,7", "cyclo:13"):
        k = parse_field_spec(spec)
        q = least_nonsplitting_completely_split_prime(B, k, 1000)
        print(f"d={B.d:>2} {spec:<12} q={q}  B splits over k: {splits_over_abelian(B, k)}")

# %%
# Genus of the Shimura curve from the Eichler formula, for every d below 10^4.
genera = {B.d: shimura_genus(B) for B in valid_discriminants_below(10**4)}
print("genus 0:", [d for d, g in genera.items() if g == 0])
print("genus 1:", [d for d, g in genera.items() if g == 1])
print("most common genera:", Counter(genera.values()).most_common(5))
