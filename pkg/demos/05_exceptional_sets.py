# Exceptional prime sets
#
# For each prime of S with generator alpha, each exponent tuple eps and each
# Frobenius trace a, take the norm of alpha^eps - beta^e where beta^2 + a beta + q = 0.
# The prime divisors of the nonzero values, with T and the ramified primes,
# make up N1 (e = 24h) and N1' (e = 12h). L is their union.

# %%
from shimura_gate.exceptional import (
    ExceptionalConfig,
    SuppliedData,
    Variant,
    exceptional_sets,
    fr_set,
    norm_value,
    trace_filter,
)
from shimura_gate.fields import parse_field_spec, power_basis_field

# %%
# The smallest case: k = Q, alpha = 2, q = 2, trace 0, so beta^2 = -2.
K = power_basis_field(parse_field_spec("rational"))
for eps, variant in (((0,), Variant.UNPRIMED), ((8,), Variant.UNPRIMED), ((0,), Variant.PRIMED)):
    print(variant.value, eps, norm_value(K, K.element([2]), eps, 0, 2, 1, variant))

# %%
print("traces for q = 29:", fr_set(29).traces)
print("traces surviving mod 11 for q = 3:", sorted(trace_filter(3, 11)))

# %%
# Full sets for Q(sqrt(-5)); S is chosen automatically.
report = exceptional_sets(parse_field_spec("quad:-5"))
print("S:", [(s.q, s.alpha_str) for s in report.S])
print("T =", report.T, " Ram =", report.Ram, " complete:", report.complete)
print("|N0| =", len(report.N0), " |N0'| =", len(report.N0p), " |L| =", len(report.L))
print("L below 500:", [p for p in report.L if p < 500])

# %%
# Quartic fields need a supplied, verified generator. Here Q(zeta_5) with
# q = 11 and alpha = -2 - zeta_5 (coordinates in the power basis of zeta_5).
data = SuppliedData.from_json({"h": 1, "generators": [{"q": 11, "root": 9, "alpha": [-2, -1, 0, 0]}]})
quartic = exceptional_sets(
    parse_field_spec("cyclo:5"),
    ExceptionalConfig(variants=(Variant.PRIMED,), supplied=data, rho_budget=10**4, ecm_curves=0),
)
print("Q(zeta_5): provenance", quartic.S[0].provenance, " N1' has", len(quartic.N1p), "known primes")
