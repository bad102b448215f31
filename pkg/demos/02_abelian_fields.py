# Abelian fields as (conductor, subgroup) pairs
#
# A field spec like "biquad:-5,7" becomes a subgroup H of (Z/fZ)^x. Prime
# splitting, local degrees and subfields are then finite group computations.

# %%
from shimura_gate.fields import (
    QuadraticField,
    SplitPrimeIdeal,
    contains_hilbert_class_field,
    parse_field_spec,
    power_basis_field,
    principal_generator,
)

# %%
k = parse_field_spec("biquad:-5,7")
z = parse_field_spec("cyclo:13")
print(k, "conductor", k.conductor, "degree", k.degree)
print("quadratic subfields:", [str(L) for L in k.quadratic_subfields])
print("first primes splitting completely in k:", [q for q in range(2, 200) if k.splits_completely(q)][:6])

# %%
# Local degrees. 2 ramifies in Q(sqrt(-5)) and is inert in Q(sqrt(-35)), giving 4.
for ell in (2, 3, 5, 7, 11):
    print(f"local degree of {ell}: biquad {k.local_degree(ell)}, cyclo:13 {z.local_degree(ell)}")

# %%
# Hilbert class fields. For abelian k, only imaginary quadratic L whose class
# group has exponent <= 2 can have H_L inside k, and then H_L is the genus field.
for spec in ("biquad:-5,7", "cyclo:13", "quad:-1", "biquad:-1,5"):
    print(spec, contains_hilbert_class_field(parse_field_spec(spec)))

# %%
# Principal generators: the square of the prime (7, sqrt(-5) - 3) is principal.
L = QuadraticField(-5)
alpha = principal_generator(SplitPrimeIdeal(L, 7, 3), 2)
print("generator:", alpha, "norm", alpha.norm())

# %%
# Explicit models. The biquadratic field gets a primitive element t = sqrt(-5) + sqrt(7)
# and exact arithmetic in Q[t]/(f); elements print in the basis 1, sqrt(-5), sqrt(7), ....
K = power_basis_field(k)
print("defining polynomial (low degree first):", K.poly)
x = K.from_display([2, 1, 0, 0])
print(K.format(x), "has norm", K.norm(x))
