"""Wind-speed distributions and long-term power estimation at a grid point.

Extracts a point speed series, estimates its density with a Scott-rule
Gaussian KDE, compares distributions with the Wasserstein-1 distance, and
runs the speeds through the bundled Enercon E92/2350 power curve. The
point of the exercise: a small distributional shift moves the cumulative
energy a lot, because the speed-to-power map is non-linear.
"""

from pathlib import Path

import numpy as np

from windeval import (
    cumulative_power,
    default_power_curve,
    default_speed_grid,
    kde,
    power_difference,
    power_from_speed,
    scott_bandwidth,
    wasserstein1,
    write_density_csv,
)

out_dir = Path(__file__).parent / "output"
out_dir.mkdir(exist_ok=True)

# A year of hourly speeds at one location: Rayleigh-ish, mean ~7.5 m/s.
gen = np.random.default_rng(11)
truth = gen.rayleigh(6.0, size=8760)
# A "smoothed prediction": slightly compressed toward the mean, as an
# interpolation-based method would produce.
pred = truth.mean() + 0.9 * (truth - truth.mean())

print(f"W1(pred, truth) = {wasserstein1(pred, truth):.4f} m/s")

h = scott_bandwidth(truth)
grid = default_speed_grid(truth, h)
write_density_csv(out_dir / "density_truth.csv", kde(truth, grid, h))
write_density_csv(out_dir / "density_pred.csv", kde(pred, grid, h))
print(f"Scott bandwidth {h:.3f} m/s; densities written to {out_dir}")

# The power curve is flat below cut-in and above rated, steep in between.
curve = default_power_curve()
print(f"\n{curve.name}: cut-in {curve.cut_in}, cut-out {curve.cut_out}, "
      f"rated {curve.rated_power} kW at {curve.hub_height} m hub height")
for speed in (2.0, 5.0, 8.0, 11.0, 14.0, 25.0):
    print(f"  {speed:4.1f} m/s -> {power_from_speed(speed, curve):7.1f} kW")

# Cumulative energy over the year, truth vs smoothed prediction.
hours = [(i * 3600, float(s)) for i, s in enumerate(truth)]
hours_pred = [(i * 3600, float(s)) for i, s in enumerate(pred)]
ref_series = cumulative_power(hours, curve, dt_hours=1.0)
pred_series = cumulative_power(hours_pred, curve, dt_hours=1.0)
diff = power_difference(pred_series, ref_series)
print(f"\ntruth energy: {ref_series.cumulative_kwh[-1]:,.0f} kWh")
print(f"pred energy:  {pred_series.cumulative_kwh[-1]:,.0f} kWh")
print(f"final error:  {diff[-1]:+,.0f} kWh "
      f"({100 * diff[-1] / ref_series.cumulative_kwh[-1]:+.1f}%)")
print("a 10% squeeze of the speed distribution shifts annual energy "
      "disproportionately through the curve's steep mid-range")
