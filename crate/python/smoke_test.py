"""Smoke test for the trilie_py extension: one pass over every exposed
surface — algebra loading, validation, parsing, arithmetic, the Hopf
operations, dual products, and word counting.  Run after installing:

    pip install -e . --no-build-isolation && python smoke_test.py
"""

import trilie_py as t

# Algebra loading and round-tripping.
assert "iso3_1_3" in t.Algebra.builtin_names()
iso = t.Algebra.builtin("iso3_1_3")
assert t.Algebra.from_json(iso.to_json()) == iso
assert len(iso.g0) == 10 and len(iso.g1) == 4

ok, lines = iso.validate()
assert ok, lines

# Parsing, rendering, and the reduction golden value.
e = iso.parse("V1*V1*V2")
assert repr(e) == "-1/2*P2 - V[1,2,1] - V[2,1,1]"
assert e.terms()[0] == ("-1/2", "P2")
assert e == iso.parse(repr(e))

# Arithmetic agrees with parsing the combined expression.
u = iso.parse("3*V0*V1 + 5")
prod = iso.parse("V0") * iso.parse("V1")
assert (u - prod.scaled("3") - iso.parse("5")).is_zero()
assert u.counit() == "5"

# Hopf layer: primitivity, a coproduct with its twist coefficient, antipode.
assert iso.parse("V0").is_primitive()
cp = iso.parse("V[0,0]").coproduct()
assert len(cp) == 3
assert "(1+q)*(V[0] ⊗ V[0])" in repr(cp)
assert repr(prod.antipode()) == "q*V[1,0]"

small = t.Algebra.builtin("iso3_1_2")
assert small.pbw_dimensions(2) == [1, 9, 48]

tiny = t.Algebra.builtin("iso3_1_1")
ok, lines = tiny.hopf_check(degree=2, pairs=25)
assert ok, lines
ok, line = tiny.antipode_check(degree=2)
assert ok, line

# Dual layer: the twisted product of two odd functionals, and a coproduct
# showing a correction term beyond the primitive part.
text, cutoff = small.dual_mul("theta[0]", "theta[1]")
assert text == "theta[0,1] + q*theta[1,0]" and cutoff == 4

text, cutoff = tiny.dual_coproduct("theta[0]", cutoff=3)
assert cutoff == 3
assert "(theta[0] ⊗ 1)" in text and "(1 ⊗ theta[0])" in text
assert "alpha" in text  # the even-generator corrections

# Word counting.
assert t.roby_dim(4, 3, 3) == 44
assert t.roby_basis(2, 3, 2) == [[1, 1], [1, 2], [2, 1], [2, 2]]

print("smoke test: all assertions passed")
