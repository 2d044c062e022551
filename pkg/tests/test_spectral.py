import numpy as np
import pytest

from windeval import (
    Field2D,
    ValidationError,
    era5_like_grid,
    melr,
    power_spectrum_2d,
    rapsd,
    spectral_log_ratio,
    write_rapsd_csv,
)

from oracles import dft2_power, radial_bins_loop


class TestPowerSpectrum:
    def test_matches_dense_dft_oracle(self):
        gen = np.random.default_rng(0)
        for shape in ((8, 8), (8, 6), (5, 9)):
            f = gen.standard_normal(shape)
            got = power_spectrum_2d(f).power
            np.testing.assert_allclose(got, dft2_power(f), atol=1e-12)

    def test_constant_field_is_dc_only(self):
        c = 2.75
        power = power_spectrum_2d(np.full((6, 6), c)).power
        assert power[0, 0] == pytest.approx(c * c, rel=1e-12)
        rest = power.copy()
        rest[0, 0] = 0.0
        assert np.all(rest < 1e-12 * c * c)

    def test_pure_cosine_concentrates_at_plus_minus_4(self):
        x = np.arange(32)
        f = np.cos(2 * np.pi * 4 * x / 32)[:, None] * np.ones((1, 32))
        power = power_spectrum_2d(f).power
        # DFT coefficient c/2 at wavenumbers (+-4, 0) under 1/(mn) scaling
        assert power[4, 0] == pytest.approx(0.25, rel=1e-9)
        assert power[-4, 0] == pytest.approx(0.25, rel=1e-9)
        others = power.copy()
        others[4, 0] = others[-4, 0] = 0.0
        assert others.max() < 1e-12

    def test_parseval_identity(self):
        gen = np.random.default_rng(1)
        for _ in range(10):
            f = gen.standard_normal((16, 12))
            total = power_spectrum_2d(f).power.sum()
            assert total == pytest.approx(np.mean(f**2), rel=1e-9)


class TestRapsd:
    def test_matches_per_cell_loop_oracle(self):
        gen = np.random.default_rng(2)
        for shape in ((12, 10), (8, 8), (9, 13)):
            f = gen.standard_normal(shape)
            spectrum = rapsd(f)
            k_max = min(shape) // 2
            energies, counts, discarded = radial_bins_loop(
                power_spectrum_2d(f).power, k_max
            )
            np.testing.assert_allclose(spectrum.energies, energies, rtol=1e-12)
            np.testing.assert_array_equal(spectrum.counts, counts)
            assert spectrum.discarded == discarded
            assert list(spectrum.wavenumbers) == list(range(1, k_max + 1))

    def test_bin_count_bookkeeping(self):
        gen = np.random.default_rng(3)
        for shape in ((16, 16), (12, 20), (136, 168)):
            f = gen.standard_normal(shape)
            spectrum = rapsd(f)
            assert spectrum.counts.sum() + spectrum.discarded + 1 == shape[0] * shape[1]
            assert np.all(spectrum.counts > 0)

    def test_wavelengths_use_grid_spacing(self):
        grid = era5_like_grid(16, 16, spacing_s=25.0)
        field = Field2D(grid, np.random.default_rng(4).standard_normal((16, 16)))
        spectrum = rapsd(field)
        np.testing.assert_allclose(
            spectrum.wavelengths, 25.0 / spectrum.wavenumbers
        )

    def test_white_noise_is_flat(self):
        gen = np.random.default_rng(5)
        acc = None
        for _ in range(50):
            e = rapsd(gen.standard_normal((64, 64))).energies
            acc = e if acc is None else acc + e
        acc /= 50
        assert acc.max() / acc.min() <= 3.0

    def test_sinusoid_energy_concentration(self):
        x = np.arange(32)
        f = np.cos(2 * np.pi * 4 * x / 32)[:, None] * np.ones((1, 32))
        spectrum = rapsd(f)
        e4 = spectrum.energies[3]
        others = np.delete(spectrum.energies, 3)
        assert np.all(e4 > 1e3 * np.maximum(others, 1e-300))

    def test_constant_field_has_zero_energy(self):
        spectrum = rapsd(np.full((8, 8), 3.0))
        assert np.all(spectrum.energies < 1e-25)

    def test_translation_invariance(self):
        gen = np.random.default_rng(6)
        f = gen.standard_normal((16, 16))
        rolled = np.roll(np.roll(f, 5, axis=0), -3, axis=1)
        np.testing.assert_allclose(
            rapsd(f).energies, rapsd(rolled).energies, rtol=1e-9
        )

    def test_too_small_field_rejected(self):
        with pytest.raises(ValidationError) as err:
            rapsd(np.zeros((3, 8)))
        assert err.value.code == "field-too-small"


class TestMelr:
    def test_identical_fields_give_zero(self):
        f = np.random.default_rng(7).standard_normal((16, 16))
        assert melr(f, f) == 0.0

    def test_scaling_gives_log_four(self):
        f = np.random.default_rng(8).standard_normal((16, 16))
        assert melr(2 * f, f) == pytest.approx(np.log(4.0), abs=1e-12)
        assert melr(2 * f, f, mode="sum") == pytest.approx(
            len(rapsd(f).wavenumbers) * np.log(4.0), abs=1e-9
        )

    def test_general_scaling_property(self):
        f = np.random.default_rng(9).standard_normal((12, 12))
        for alpha in (0.5, 3.0):
            assert melr(alpha * f, f) == pytest.approx(
                abs(np.log(alpha**2)), abs=1e-12
            )

    def test_symmetry(self):
        gen = np.random.default_rng(10)
        a = gen.standard_normal((16, 16))
        b = gen.standard_normal((16, 16))
        assert melr(a, b) == pytest.approx(melr(b, a), abs=1e-12)

    def test_empty_spectrum_rejected(self):
        const = np.full((8, 8), 1.0)
        with pytest.raises(ValidationError) as err:
            melr(const, const)
        assert err.value.code == "empty-spectrum"

    def test_floor_skipping_reported(self):
        gen = np.random.default_rng(11)
        f = gen.standard_normal((8, 8))
        _, ratios, skipped = spectral_log_ratio(f, f)
        assert skipped == 0
        assert ratios.size == 4

    def test_shape_mismatch(self):
        with pytest.raises(ValidationError):
            melr(np.zeros((8, 8)), np.zeros((8, 10)))

    def test_unknown_mode_rejected(self):
        f = np.random.default_rng(12).standard_normal((8, 8))
        with pytest.raises(ValidationError):
            melr(f, f, mode="median")

    def test_log_base_rescales(self):
        f = np.random.default_rng(13).standard_normal((16, 16))
        natural = melr(2 * f, f)
        assert melr(2 * f, f, base=10.0) == pytest.approx(
            natural / np.log(10.0), abs=1e-12
        )
        with pytest.raises(ValidationError):
            melr(2 * f, f, base=1.0)


def test_rapsd_csv_export(tmp_path):
    grid = era5_like_grid(8, 8, spacing_s=10.0)
    field = Field2D(grid, np.random.default_rng(13).standard_normal((8, 8)))
    path = tmp_path / "spectrum.csv"
    write_rapsd_csv(path, rapsd(field))
    lines = path.read_text().splitlines()
    assert lines[0] == "k,wavelength_km,energy,count"
    assert len(lines) == 1 + 4  # bins 1..4
    first = lines[1].split(",")
    assert first[0] == "1"
    assert float(first[1]) == pytest.approx(10.0)
