"""One-off oracle script: computes the frozen expected values used by the C++ tests.

Independent of the C++ implementation: high-precision double sums (mpmath) and
numerical quadrature (scipy).
"""
import mpmath as mp
from scipy import integrate

mp.mp.dps = 40

# Fixed 16-point complex vector used by core_fft_test.
x = [
    (0.25, -0.5), (0.75, 0.125), (-0.375, 0.625), (0.5, 0.0),
    (-0.875, -0.25), (0.0625, 0.9375), (0.3125, -0.6875), (-0.125, 0.375),
    (1.0, -1.0), (-0.5625, 0.4375), (0.8125, 0.1875), (-0.9375, -0.8125),
    (0.4375, 0.5625), (-0.0625, -0.3125), (0.6875, 0.75), (-0.25, 0.0625),
]
N = len(x)
print("dft16 = {")
for k in range(N):
    acc = mp.mpc(0)
    for n in range(N):
        acc += mp.mpc(*x[n]) * mp.exp(-2j * mp.pi * k * n / N)
    print(f"    {{{mp.nstr(acc.real, 20)}, {mp.nstr(acc.imag, 20)}}},")
print("}")


def eq8(q):
    # (2/q) * int_{1/2}^{1} int_{-q/2}^{q/2} alpha^2 / M^2 dalpha dM
    val, _ = integrate.dblquad(lambda a, m: a * a / (m * m), 0.5, 1.0, -q / 2, q / 2)
    return 2.0 / q * val


for q in (0.125, 0.5):
    print(f"eq8(q={q}) = {eq8(q):.17g}")

print("snr_b8 =", mp.nstr(10 * mp.log10(3 * 2**16), 20))
h = mp.sqrt(2) / 2
print("twiddle_q8 =", mp.nstr(mp.nint(h / mp.mpf(2) ** -7) * mp.mpf(2) ** -7, 20))
