"""Real-return deflation, GDP weighting, and moment estimation."""

import numpy as np
import pandas as pd
import pytest

from pensim import (
    CountryYearRecord,
    DataFileError,
    MomentEstimate,
    estimate_moments,
    gdp_weights,
    global_weighted_return_series,
    load_panel,
    panel_moments,
    real_return,
)
from pensim.calibration import METHOD_POOLED, METHOD_WEIGHTED


def record(country="gbr", year=2000, eq_tr=0.05, inflation=0.02, **kw):
    return CountryYearRecord(
        country=country,
        year=year,
        nominal_total_return=eq_tr,
        inflation=inflation,
        **kw,
    )


def panel_frame(rows):
    return pd.DataFrame(
        rows, columns=["country", "year", "eq_tr", "inflation", "population", "rgdppc"]
    )


class TestRealReturn:
    def test_deflates_nominal_by_inflation(self):
        assert real_return(record(eq_tr=0.05, inflation=0.02)) == pytest.approx(
            0.0294118, abs=5e-8
        )

    def test_equal_rates_cancel(self):
        assert real_return(record(eq_tr=0.02, inflation=0.02)) == 0.0

    def test_zero_inflation_is_identity(self):
        assert real_return(record(eq_tr=0.07, inflation=0.0)) == pytest.approx(0.07)

    def test_missing_fields_rejected(self):
        with pytest.raises(ValueError, match="missing"):
            real_return(CountryYearRecord(country="gbr", year=2000, inflation=0.02))
        with pytest.raises(ValueError, match="missing"):
            real_return(
                CountryYearRecord(country="gbr", year=2000, nominal_total_return=0.05)
            )

    def test_degenerate_rates_rejected(self):
        with pytest.raises(ValueError, match="-100%"):
            real_return(record(eq_tr=0.05, inflation=-1.0))
        with pytest.raises(ValueError, match="-100%"):
            real_return(record(eq_tr=-1.2, inflation=0.02))


class TestGdpWeights:
    def test_proportional_to_population_times_gdp(self):
        frame = panel_frame(
            [
                ("a", 2000, 0.05, 0.0, 3.0, 1.0),
                ("b", 2000, 0.02, 0.0, 1.0, 1.0),
            ]
        )
        assert gdp_weights(frame) == {"a": 0.75, "b": 0.25}

    def test_weights_sum_to_one(self):
        frame = panel_frame(
            [
                ("a", 2000, 0.05, 0.0, 61.0, 7.3),
                ("b", 2000, 0.02, 0.0, 127.0, 4.1),
                ("c", 2000, 0.01, 0.0, 9.0, 8.8),
            ]
        )
        assert sum(gdp_weights(frame).values()) == pytest.approx(1.0)

    def test_common_scaling_leaves_weights_unchanged(self):
        rows = [("a", 2000, 0.05, 0.0, 3.0, 2.0), ("b", 2000, 0.02, 0.0, 5.0, 1.0)]
        scaled = [(c, y, r, i, p * 1e6, g) for c, y, r, i, p, g in rows]
        assert gdp_weights(panel_frame(rows)) == pytest.approx(
            gdp_weights(panel_frame(scaled))
        )

    def test_incomplete_countries_are_renormalized_away(self):
        frame = panel_frame(
            [
                ("a", 2000, 0.05, 0.0, 3.0, 1.0),
                ("b", 2000, np.nan, 0.0, 97.0, 9.0),
            ]
        )
        assert gdp_weights(frame) == {"a": 1.0}

    def test_no_complete_records_rejected(self):
        frame = panel_frame([("a", 2000, np.nan, 0.0, 3.0, 1.0)])
        with pytest.raises(ValueError, match="complete"):
            gdp_weights(frame)


class TestWeightedSeries:
    def test_single_country_is_identity(self):
        frame = panel_frame(
            [
                ("a", 2000, 0.05, 0.02, 3.0, 1.0),
                ("a", 2001, 0.03, 0.00, 3.0, 1.0),
            ]
        )
        series = global_weighted_return_series(frame)
        assert series.index.tolist() == [2000, 2001]
        assert series[2000] == pytest.approx(1.05 / 1.02 - 1)
        assert series[2001] == pytest.approx(0.03)

    def test_identical_returns_ignore_weights(self):
        frame = panel_frame(
            [
                ("a", 2000, 0.04, 0.0, 3.0, 9.0),
                ("b", 2000, 0.04, 0.0, 888.0, 1.5),
            ]
        )
        series = global_weighted_return_series(frame)
        assert series[2000] == pytest.approx(0.04)

    def test_blends_by_gdp_weight(self):
        frame = panel_frame(
            [
                ("a", 2000, 0.05, 0.0, 3.0, 1.0),
                ("b", 2000, 0.01, 0.0, 1.0, 1.0),
            ]
        )
        series = global_weighted_return_series(frame)
        assert series[2000] == pytest.approx(0.75 * 0.05 + 0.25 * 0.01)

    def test_partial_year_renormalizes_to_remaining_countries(self):
        frame = panel_frame(
            [
                ("a", 2000, 0.05, 0.0, 3.0, 1.0),
                ("b", 2000, np.nan, 0.0, 97.0, 9.0),
                ("a", 2001, 0.02, 0.0, 3.0, 1.0),
                ("b", 2001, 0.04, 0.0, 3.0, 1.0),
            ]
        )
        series = global_weighted_return_series(frame)
        assert series[2000] == pytest.approx(0.05)
        assert series[2001] == pytest.approx(0.03)

    def test_years_with_no_data_are_skipped(self):
        frame = panel_frame(
            [
                ("a", 2000, 0.05, 0.0, 3.0, 1.0),
                ("a", 2001, np.nan, 0.0, 3.0, 1.0),
                ("a", 2002, 0.03, 0.0, 3.0, 1.0),
            ]
        )
        series = global_weighted_return_series(frame)
        assert series.index.tolist() == [2000, 2002]


class TestEstimateMoments:
    def test_two_point_sample(self):
        estimate = estimate_moments(np.array([0.01, 0.03]), METHOD_POOLED)
        assert estimate.mean == pytest.approx(2.0)
        assert estimate.sd == pytest.approx(np.sqrt(2.0))
        assert estimate.n_years == 2
        assert estimate.method == METHOD_POOLED

    def test_sd_uses_sample_divisor(self):
        values = np.array([0.0, 0.01, 0.02, 0.05])
        estimate = estimate_moments(values, METHOD_POOLED)
        assert estimate.sd == pytest.approx(float(np.std(values, ddof=1)) * 100.0)

    def test_series_input_reports_year_range(self):
        series = pd.Series([0.01, 0.02, 0.03], index=[1900, 1950, 2015])
        estimate = estimate_moments(series, METHOD_WEIGHTED)
        assert (estimate.first_year, estimate.last_year) == (1900, 2015)

    def test_sequence_input_has_no_year_range(self):
        estimate = estimate_moments([0.01, 0.02], METHOD_POOLED)
        assert (estimate.first_year, estimate.last_year) == (0, 0)

    def test_nan_values_filtered_with_their_years(self):
        series = pd.Series([0.01, np.nan, 0.03], index=[1900, 1990, 1950])
        estimate = estimate_moments(series, METHOD_WEIGHTED)
        assert estimate.n_years == 2
        assert (estimate.first_year, estimate.last_year) == (1900, 1950)

    def test_too_few_values(self):
        with pytest.raises(ValueError, match="at least 2"):
            estimate_moments([0.01], METHOD_POOLED)

    def test_unknown_method(self):
        with pytest.raises(ValueError, match="method"):
            estimate_moments([0.01, 0.02], "harmonic")

    def test_estimate_validation(self):
        with pytest.raises(ValueError, match="sd"):
            MomentEstimate(
                mean=1.0, sd=-0.1, n_years=5, method=METHOD_POOLED,
                first_year=0, last_year=0,
            )
        with pytest.raises(ValueError, match="at least 2"):
            MomentEstimate(
                mean=1.0, sd=0.1, n_years=1, method=METHOD_POOLED,
                first_year=0, last_year=0,
            )


class TestPanelMoments:
    def small_panel(self):
        return panel_frame(
            [
                ("a", 2000, 0.05, 0.02, 3.0, 1.0),
                ("b", 2000, 0.01, 0.02, 1.0, 1.0),
                ("a", 2001, 0.03, 0.00, 3.0, 1.0),
                ("b", 2001, 0.02, 0.00, 1.0, 1.0),
            ]
        )

    def test_pooled_uses_every_country_year(self):
        real = np.array([1.05 / 1.02 - 1, 1.01 / 1.02 - 1, 0.03, 0.02])
        estimate = panel_moments(self.small_panel(), METHOD_POOLED)
        assert estimate.n_years == 4
        assert estimate.mean == pytest.approx(float(np.mean(real)) * 100.0)
        assert estimate.sd == pytest.approx(float(np.std(real, ddof=1)) * 100.0)
        assert (estimate.first_year, estimate.last_year) == (2000, 2001)

    def test_weighted_collapses_each_year_first(self):
        portfolio = np.array(
            [
                0.75 * (1.05 / 1.02 - 1) + 0.25 * (1.01 / 1.02 - 1),
                0.75 * 0.03 + 0.25 * 0.02,
            ]
        )
        estimate = panel_moments(self.small_panel(), METHOD_WEIGHTED)
        assert estimate.n_years == 2
        assert estimate.mean == pytest.approx(float(np.mean(portfolio)) * 100.0)
        assert estimate.sd == pytest.approx(float(np.std(portfolio, ddof=1)) * 100.0)

    def test_unknown_method(self):
        with pytest.raises(ValueError, match="method"):
            panel_moments(self.small_panel(), "mystery")

    def test_diversification_lowers_portfolio_volatility(self):
        # independent country returns: the yearly portfolio average has
        # roughly 1/sqrt(3) the dispersion of the pooled country-years
        rng = np.random.default_rng(5)
        rows = []
        for year in range(1900, 1980):
            for country in ("a", "b", "c"):
                rows.append(
                    (country, year, rng.normal(0.05, 0.15), 0.0, 1.0, 1.0)
                )
        frame = panel_frame(rows)
        pooled = panel_moments(frame, METHOD_POOLED)
        weighted = panel_moments(frame, METHOD_WEIGHTED)
        assert weighted.sd < pooled.sd
        assert weighted.mean == pytest.approx(pooled.mean, abs=1e-9)


class TestLoadPanel:
    def write(self, tmp_path, text, name="panel.csv"):
        f = tmp_path / name
        f.write_text(text)
        return str(f)

    def test_reads_canonical_columns(self, tmp_path):
        path = self.write(
            tmp_path,
            "country,year,eq_tr,inflation,population,rgdppc\n"
            "gbr,1900,0.05,0.02,38000000,4500\n",
        )
        frame = load_panel(path)
        assert list(frame.columns) == list(
            ("country", "year", "eq_tr", "inflation", "population", "rgdppc")
        )
        assert frame.loc[0, "year"] == 1900

    def test_remaps_alternate_headers(self, tmp_path):
        path = self.write(
            tmp_path,
            "iso,yr,ret,infl,pop,gdp\ngbr,1900,0.05,0.02,38.0,4500\n",
        )
        frame = load_panel(
            path,
            columns={
                "country": "iso",
                "year": "yr",
                "eq_tr": "ret",
                "inflation": "infl",
                "population": "pop",
                "rgdppc": "gdp",
            },
        )
        assert frame.loc[0, "eq_tr"] == 0.05

    def test_missing_column_names_both_sides(self, tmp_path):
        path = self.write(tmp_path, "country,year,eq_tr,inflation,population\n")
        with pytest.raises(DataFileError, match="rgdppc"):
            load_panel(path)

    def test_degenerate_rows_dropped(self, tmp_path):
        path = self.write(
            tmp_path,
            "country,year,eq_tr,inflation,population,rgdppc\n"
            "gbr,1900,0.05,0.02,38.0,4500\n"
            "gbr,1901,-1.5,0.02,38.0,4500\n"
            "gbr,1902,0.03,-1.0,38.0,4500\n",
        )
        frame = load_panel(path)
        assert frame["year"].tolist() == [1900]

    def test_rows_with_gaps_are_kept(self, tmp_path):
        path = self.write(
            tmp_path,
            "country,year,eq_tr,inflation,population,rgdppc\n"
            "gbr,1900,,0.02,38.0,4500\n",
        )
        frame = load_panel(path)
        assert len(frame) == 1
        assert np.isnan(frame.loc[0, "eq_tr"])

    def test_missing_file(self, tmp_path):
        with pytest.raises(DataFileError, match="cannot read"):
            load_panel(str(tmp_path / "nope.csv"))

    def test_demo_panel_round_trip(self):
        frame = load_panel("data/demo_panel.csv")
        assert len(frame) == 348
        pooled = panel_moments(frame, METHOD_POOLED)
        weighted = panel_moments(frame, METHOD_WEIGHTED)
        assert pooled.n_years == 348
        assert weighted.n_years == 116
        assert weighted.sd <= pooled.sd
