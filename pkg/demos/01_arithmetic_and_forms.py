# Integer arithmetic and binary quadratic forms
#
# Everything downstream rests on three small tools: Kronecker symbols,
# factorization, and class groups computed from reduced forms.

# %%
from shimura_gate.arith import factorize, kronecker, primes_in_range
from shimura_gate.fields import quadratic_class_group

# %%
# Kronecker symbols decide how a prime behaves in a quadratic field.
# (-20 | 7) = 1, so 7 splits in Q(sqrt(-5)); (-79 | 2) = 1 because -79 = 1 mod 8.
print("(-20|7) =", kronecker(-20, 7))
print("(-79|2) =", kronecker(-79, 2))
print("primes p < 60 split in Q(sqrt(-5)):", [p for p in primes_in_range(3, 60) if kronecker(-20, p) == 1])

# %%
# Factorization is exact below 2^128 and reports leftover cofactors when a
# budget runs out, so callers can still answer divisibility questions.
print(factorize(16769025))
big = (2**89 - 1) * (2**107 - 1)
partial = factorize(big, rho_budget=100, exhaust_below_2_128=False)
print("complete:", partial.complete, "cofactors:", partial.unfactored)

# %%
# Class groups from reduced forms. D = -20 has two classes; D = 28 (real) has one.
for D in (-20, -23, -84, 28, 229):
    grp = quadratic_class_group(D)
    print(f"h({D}) = {grp.h}  forms: {grp.representatives}")

# %%
# Composition makes the classes a group. For -23 the non-principal form has order 3.
grp = quadratic_class_group(-23)
f = grp.representatives[1]
print(f, "has order", grp.order(f), "; exponent <= 2:", grp.exponent_at_most_two())
