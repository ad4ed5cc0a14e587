"""The bound functions and the two exact threshold checks.

Everything here is exact integer arithmetic; the threshold scans compare
a power of two against a binomial sum directly, with no floating point.
"""

from progvc.bounds import (
    capital_c,
    f_bound,
    g_bound,
    km_bound,
    verify_heisenberg_fixed_threshold,
    verify_heisenberg_translate_threshold,
)

print("Sauer-Shelah polynomial c_d(n) = sum_{i<=d} C(n,i):")
for d in range(4):
    print(f"  d={d}: {[capital_c(d, n) for n in range(8)]}")
print()

print("f(d,k) = least n with c_d(n)^k < 2^n, and g(d,k) = k*(n0-1):")
print("  f values", {(d, k): f_bound(d, k) for d in (1, 2, 3) for k in (1, 2)})
print("  g values", {(d, k): g_bound(d, k) for d in (1, 2, 3) for k in (1, 2)})
print()

print("Karpinski-Macintyre shatter bound km(d,l,s,n) = d(2d-1)^(l-1) sum 2^i C(sn,i):")
print(f"  km(2,5,14,1) = {km_bound(2, 5, 14, 1)}")
print(f"  km(1,1,1,n)  = {[km_bound(1, 1, 1, n) for n in range(5)]}  (equals 1+2n)")
print()

t = verify_heisenberg_translate_threshold()
print("Translate-family threshold: (648 sum 2^i C(14n,i), i<=5)^4 < 2^n")
print(f"  fails at n={t.fails_at}, holds at n={t.holds_at}  ->  VC bound {t.bound}")
f = verify_heisenberg_fixed_threshold()
print("Fixed-progression threshold: 2^n <= 288 sum 2^i C(14n,i), i<=3")
print(f"  holds at n={f.holds_at}, fails at n={f.fails_at}  ->  dual VC bound {f.bound}")
