"""Data-driven fuzzy inference systems for time-series forecasting.

NMR and NTSK (RLS/wRLS) models with genetic feature selection and
randomized/forest ensembles, backed by the C++ core in ``nfis._nfis``.
"""

from ._nfis import (  # noqa: F401
    ConfigError,
    DataError,
    Model,
    NumericError,
    RegressionDataset,
    TimeSeriesFrame,
    __version__,
    chronological_split,
    firing_degrees,
    fit_nmr,
    fit_ntsk,
    fit_random_ensemble,
    fit_random_forest,
    fit_rf_ntsk,
    grid_search,
    load_csv,
    load_dataset_csv,
    load_model,
    make_supervised,
    mape,
    membership,
    ndei,
    nrmse,
    rf_ntsk_combine,
    rmse,
    run_ga,
    save_dataset_csv,
)
