"""Reference values of <x> at period pair (1, 1/omega).

Uses only the integral representation of log S2 on the strip plus the
step-1 shift relation; no q-series. Output is a C++ initializer list.
"""
import mpmath as mp

mp.mp.dps = 30


def log_s2(x, w):
    om = 1 + 1 / w
    a = 2 * x - om
    f = lambda t: (mp.sinh(a * t) / (2 * mp.sinh(t) * mp.sinh(t / w)) - a * w / (2 * t)) / t
    t0 = mp.mpf('1e-10')
    pts = [t0] + [mp.mpf(k) / 4 for k in range(1, 4 * 30)] + [mp.inf]
    return mp.quad(f, pts) + t0 * f(t0 / 2)


def angle(x, w):
    x = mp.mpc(x)
    om = 1 + 1 / w
    acc = mp.mpc(0)
    while x.real < om / 2 - 0.5:
        acc += mp.log(1 - mp.exp(2j * mp.pi * w * x))
        x += 1
    while x.real > om / 2 + 0.5:
        x -= 1
        acc -= mp.log(1 - mp.exp(2j * mp.pi * w * x))
    return mp.exp(acc + mp.pi * 1j / 2 * ((1 + w) * x - w * x * x) + log_s2(x, w))


POINTS = [
    ('1/sqrt(2)', 1 / mp.sqrt(2), [0.5, 1.0, 1.3, 2.1, mp.mpc(0.7, 0.3), mp.mpc(1.9, -0.6),
                                    mp.mpc(-0.35, 0.2), mp.mpc(0.4, 1.5), mp.mpc(1.1, -2.0)]),
    ('(sqrt(5)-1)/2', (mp.sqrt(5) - 1) / 2, [0.5, mp.mpc(1.2, 0.45), mp.mpc(2.5, -1.0)]),
    ('2-sqrt(3)', 2 - mp.sqrt(3), [0.3, mp.mpc(2.2, 0.7), mp.mpc(4.0, -0.25)]),
    ('sqrt(2)+1', mp.sqrt(2) + 1, [0.9, mp.mpc(0.6, 0.8), mp.mpc(1.1, -0.3)]),
]

if __name__ == '__main__':
    for name, w, xs in POINTS:
        for x in xs:
            x = mp.mpc(x)
            v = angle(x, w)
            print('    {%s, {%s, %s}, {%s, %s}},' % (
                mp.nstr(w, 20), mp.nstr(x.real, 17), mp.nstr(x.imag, 17),
                mp.nstr(v.real, 20), mp.nstr(v.imag, 20)), flush=True)
