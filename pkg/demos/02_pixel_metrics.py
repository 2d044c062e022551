"""PSNR, SSIM and MAE behavior on controlled degradations.

Shows the analytic PSNR values for uniform offsets, how the three SSIM
comparison terms react to a shift, a contrast change, and sign-flipped
anomalies, and why MAE alone cannot tell blur from noise.
"""

import numpy as np

from windeval import mae, psnr, ssim, ssim_components

gen = np.random.default_rng(0)
base = gen.uniform(0.2, 0.8, size=(32, 32))

# A uniform offset d gives PSNR = -20 log10(d) for peak 1 fields.
for delta in (0.1, 0.01, 0.001):
    print(f"offset {delta:<6}: psnr {psnr(base, base + delta):6.2f} dB, "
          f"mae {mae(base, base + delta):.4f}")

# SSIM factors into luminance, contrast, structure.
cases = {
    "identical": base,
    "shifted +0.1": base + 0.1,
    "contrast x0.5": base.mean() + 0.5 * (base - base.mean()),
    "sign-flipped": 2 * base.mean() - base,
    "independent": gen.uniform(0.2, 0.8, size=base.shape),
}
print(f"\n{'case':<14} {'lum':>7} {'con':>7} {'struct':>7} {'ssim':>7}")
for name, other in cases.items():
    lum, con, struct = ssim_components(base, other)
    print(f"{name:<14} {lum:7.4f} {con:7.4f} {struct:7.4f} {ssim(base, other):7.4f}")

# Blur and noise tuned to the same MAE score very differently on SSIM.
# This base field is spatially white, so smoothing wipes out the field
# itself (structure collapses), while additive noise keeps the original
# signal underneath; MAE cannot tell the two apart.
kernel = np.ones((3, 3)) / 9.0
blurred = base.copy()
for _ in range(2):
    padded = np.pad(blurred, 1, mode="edge")
    blurred = sum(
        padded[dy : dy + 32, dx : dx + 32] * kernel[dy, dx]
        for dy in range(3)
        for dx in range(3)
    )
noise_amp = mae(base, blurred) * np.sqrt(np.pi / 2.0)
noisy = base + noise_amp * gen.standard_normal(base.shape)
print(f"\nblur : mae {mae(base, blurred):.4f}  ssim {ssim(base, blurred):.4f}")
print(f"noise: mae {mae(base, noisy):.4f}  ssim {ssim(base, noisy):.4f}")
