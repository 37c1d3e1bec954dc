"""
The three analysis paths as in-memory steps.

Handlers wrap these with file I/O; ``compare`` chains them directly.
"""

from dataclasses import dataclass, field
from functools import partial
from typing import Any, Optional, Protocol

import numpy as np

from ..classifiers import (
    AnnModel,
    CrossvalResult,
    FitFn,
    LinearModel,
    ScaledClassifier,
    SldaModel,
    Standardizer,
    ann_baseline_fit,
    crossval,
    logreg_fit,
    pairwise_crossval,
    slda_fit,
    svm_ovr_fit,
    with_standard_scaling,
)
from ..dimred import (
    IcaModel,
    KpcaModel,
    ica_fit_epochs,
    ica_reduce_epochs,
    kpca_fit,
    kpca_transform,
)
from ..domain import (
    ContainerError,
    EpochSet,
    EventList,
    FeatureMatrix,
    InvalidInputError,
    Recording,
)
from ..evaluation import Split, split_train_val_test
from ..features import assemble_feature_matrix
from ..infrastructure.persistence import (
    ModelContainer,
    dimred_from_dict,
    model_from_dict,
    model_to_dict,
    network_from_dict,
    network_to_dict,
)
from ..nn import (
    GridRow,
    ModelSpec,
    ParamStore,
    TrainReport,
    default_model_spec,
    grid_search,
    predict,
    sequence_steps,
    train,
)
from ..observability import get_logger, stage
from ..signal import (
    MbllParams,
    bandpass_hemo,
    baseline_correct,
    design_butterworth_bandpass,
    mbll_convert,
    segment_epochs,
)
from .config import ClassifierName, Pipeline, PipelineConfig, Subset

logger = get_logger(__name__)


class Predictor(Protocol):
    def predict_proba(self, X: np.ndarray) -> np.ndarray: ...


# Pre-processing


def preprocess(
    cfg: PipelineConfig, rec: Recording, ev: EventList, mbll: MbllParams
) -> EpochSet:
    """MBLL conversion, zero-phase band-pass, segmentation and baseline correction."""
    with stage("mbll", channels=rec.n_channels):
        hemo = mbll_convert(rec, mbll, per_channel_distance=cfg.per_channel_distance)
    with stage("filter", streams=len(hemo.stream_names)):
        spec = design_butterworth_bandpass(
            cfg.filter_order, cfg.band_lo_hz, cfg.band_hi_hz, rec.fs
        )
        hemo = bandpass_hemo(hemo, spec)
    with stage("segment", events=len(ev)):
        es = segment_epochs(hemo, ev, (cfg.epoch_start_s, cfg.epoch_end_s))
    with stage("baseline"):
        es = baseline_correct(es, (cfg.baseline_start_s, cfg.baseline_end_s))
    return es


def make_split(cfg: PipelineConfig, labels: Any) -> Split:
    with stage("split"):
        return split_train_val_test(labels, (cfg.split_outer, cfg.split_inner), cfg.seed)


def split_to_dict(split: Split) -> dict[str, list[int]]:
    return {name: [int(i) for i in getattr(split, name)] for name in Split._fields}


def split_from_dict(blob: dict[str, Any]) -> Split:
    try:
        return Split(*(np.asarray(blob[name], dtype=np.int64) for name in Split._fields))
    except (KeyError, TypeError, ValueError) as exc:
        raise ContainerError("model container holds no valid data split") from exc


def subset_rows(split: Split, subset: Subset | str) -> np.ndarray:
    subset = Subset(subset)
    if subset is Subset.ALL:
        return np.sort(np.concatenate(split))
    return np.asarray(getattr(split, subset.value), dtype=np.int64)


def kept_rows(split: Split) -> np.ndarray:
    """Training and validation trials together."""
    return np.sort(np.concatenate([split.train, split.val]))


# Raw + ICA path


@dataclass
class RawIcaFit:
    ica: IcaModel
    spec: ModelSpec
    params: ParamStore
    report: TrainReport
    grid: tuple[GridRow, ...] = ()


def fit_raw_ica(cfg: PipelineConfig, es: EpochSet, split: Split) -> RawIcaFit:
    """ICA on the training trials' time steps, then the bidirectional LSTM on component series."""
    with stage("ica", components=cfg.n_components):
        ica = ica_fit_epochs(
            es.subset(split.train), cfg.n_components, cfg.ica_tol, cfg.ica_max_iter, cfg.seed
        )
        reduced = ica_reduce_epochs(ica, es)
    data = (reduced.subset(split.train), reduced.subset(split.val))
    train_cfg = cfg.train_config()

    with stage("train", trials=len(split.train)):
        if cfg.has_grid:
            result = grid_search(None, cfg.grid(), data, train_cfg)
            return RawIcaFit(
                ica=ica,
                spec=result.best_spec,
                params=result.best_params,
                report=result.best_report,
                grid=result.table,
            )
        spec = default_model_spec(
            ica.n_components,
            units=cfg.units,
            dense_units=cfg.dense_units,
            dropout=cfg.dropout,
            recurrent_dropout=cfg.recurrent_dropout,
            noise_sigma=cfg.noise_sigma,
            l2=cfg.l2,
            time_stride=cfg.time_stride,
            memory_steps=sequence_steps(reduced, cfg.time_stride),
        )
        params, report = train(spec, data[0], data[1], train_cfg)
    return RawIcaFit(ica=ica, spec=spec, params=params, report=report)


@dataclass(frozen=True)
class NetworkPredictor:
    spec: ModelSpec
    params: ParamStore

    def predict_proba(self, X: Any) -> np.ndarray:
        return predict(self.spec, self.params, X)


@dataclass(frozen=True)
class IcaNetworkPredictor:
    """Reduce epochs with a fitted ICA, then run the network."""

    ica: IcaModel
    network: NetworkPredictor

    def predict_proba(self, es: EpochSet) -> np.ndarray:
        return self.network.predict_proba(ica_reduce_epochs(self.ica, es))


# Feature paths


def feature_matrix(cfg: PipelineConfig, es: EpochSet) -> FeatureMatrix:
    with stage("features", feature_set=str(cfg.feature_set)):
        return assemble_feature_matrix(es, cfg.feature_set, cfg.window_spec())


def baseline_fit_fn(cfg: PipelineConfig, name: ClassifierName | str) -> FitFn:
    """Standardized fit function for a baseline classifier."""
    name = ClassifierName(name)
    if name is ClassifierName.SLDA:
        base: FitFn = slda_fit
    elif name is ClassifierName.LOGREG:
        base = partial(logreg_fit, seed=cfg.seed)
    elif name is ClassifierName.SVM:
        base = partial(svm_ovr_fit, seed=cfg.seed)
    else:
        base = partial(ann_baseline_fit, cfg=cfg.ann_config())
    return with_standard_scaling(base)


@dataclass(frozen=True)
class KpcaClassifier:
    """Standardize, project with KPCA, classify."""

    scaler: Standardizer
    kpca: KpcaModel
    model: Any

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        return self.model.predict_proba(kpca_transform(self.kpca, self.scaler.transform(X)))

    def predict(self, X: np.ndarray) -> np.ndarray:
        return np.argmax(self.predict_proba(X), axis=1)


def with_kpca(cfg: PipelineConfig, fit: FitFn) -> FitFn:
    """Wrap ``fit`` so KPCA is fitted on each training set before the classifier."""

    def kpca_fit_fn(X: np.ndarray, y: np.ndarray) -> KpcaClassifier:
        scaler = Standardizer.fit(X)
        Z = scaler.transform(X)
        n_components = min(cfg.n_components, Z.shape[0] - 1)
        kpca = kpca_fit(Z, cfg.kernel, n_components, cfg.gamma)
        return KpcaClassifier(scaler, kpca, fit(kpca_transform(kpca, Z), y))

    return kpca_fit_fn


@dataclass
class FeatureFit:
    model: Any
    feature_names: tuple[str, ...]
    crossval: dict[str, CrossvalResult] = field(default_factory=dict)


def fit_features(
    cfg: PipelineConfig, fm: FeatureMatrix, split: Split, reduce: bool, with_crossval: bool = True
) -> FeatureFit:
    """
    Fit the configured baseline on the training and validation trials.

    The network baseline is skipped by cross-validation; the others are
    scored with repeated stratified k-fold on the same trials, ternary and
    per class pair.
    """
    fit = baseline_fit_fn(cfg, cfg.classifier)
    if reduce:
        fit = with_kpca(cfg, fit)
    rows = kept_rows(split)
    X, y = fm.values[rows], fm.label_indices[rows]
    with stage("fit", classifier=str(cfg.classifier), rows=len(rows)):
        model = fit(X, y)

    results: dict[str, CrossvalResult] = {}
    if with_crossval and cfg.classifier is not ClassifierName.ANN:
        with stage("crossval", k=cfg.cv_k, repeats=cfg.cv_repeats):
            results["ternary"] = crossval(fit, X, y, cfg.cv_k, cfg.cv_repeats, cfg.seed)
            results.update(pairwise_crossval(fit, X, y, cfg.cv_k, cfg.cv_repeats, cfg.seed))
    return FeatureFit(model=model, feature_names=fm.feature_names, crossval=results)


# Containers


def classifier_to_dict(model: Any) -> dict[str, Any]:
    if isinstance(model, ScaledClassifier):
        return {
            "kind": "scaled",
            "scaler": model_to_dict(model.scaler),
            "model": classifier_to_dict(model.model),
        }
    if isinstance(model, KpcaClassifier):
        return {
            "kind": "scaled_kpca",
            "scaler": model_to_dict(model.scaler),
            "model": classifier_to_dict(model.model),
        }
    if isinstance(model, (LinearModel, SldaModel)):
        return model_to_dict(model)
    if isinstance(model, AnnModel):
        return network_to_dict(model.spec, model.params)
    if isinstance(model, NetworkPredictor):
        return network_to_dict(model.spec, model.params)
    raise InvalidInputError(f"cannot serialize classifier {type(model).__name__}")


def classifier_from_dict(blob: dict[str, Any], kpca: Optional[KpcaModel] = None) -> Any:
    kind = blob.get("kind")
    if kind == "scaled":
        scaler = model_from_dict(blob["scaler"], Standardizer)
        return ScaledClassifier(scaler, classifier_from_dict(blob["model"]))
    if kind == "scaled_kpca":
        if kpca is None:
            raise ContainerError("KPCA classifier stored without its KPCA model")
        scaler = model_from_dict(blob["scaler"], Standardizer)
        return KpcaClassifier(scaler, kpca, classifier_from_dict(blob["model"]))
    if kind == "linear":
        return model_from_dict(blob, LinearModel)
    if kind == "slda":
        return model_from_dict(blob, SldaModel)
    if kind == "network":
        return NetworkPredictor(*network_from_dict(blob))
    raise ContainerError(f"unknown classifier kind {kind!r}")


def raw_ica_container(cfg: PipelineConfig, fitted: RawIcaFit, split: Split) -> ModelContainer:
    return ModelContainer(
        pipeline=Pipeline.RAW_ICA.value,
        config=cfg.snapshot(),
        dimred=model_to_dict(fitted.ica),
        classifier=network_to_dict(fitted.spec, fitted.params),
        extras={"split": split_to_dict(split), "params_checksum": fitted.params.checksum()},
    )


def feature_container(cfg: PipelineConfig, fitted: FeatureFit, split: Split) -> ModelContainer:
    model = fitted.model
    return ModelContainer(
        pipeline=cfg.pipeline.value,
        config=cfg.snapshot(),
        dimred=model_to_dict(model.kpca) if isinstance(model, KpcaClassifier) else None,
        classifier=classifier_to_dict(model),
        extras={"split": split_to_dict(split), "feature_names": list(fitted.feature_names)},
    )


def restore_predictor(container: ModelContainer) -> Predictor:
    """Rebuild the fitted pipeline stored in ``container``."""
    pipeline = Pipeline(container.pipeline)
    dimred = dimred_from_dict(container.dimred) if container.dimred is not None else None
    if pipeline is Pipeline.RAW_ICA:
        if not isinstance(dimred, IcaModel):
            raise ContainerError("raw_ica container lacks its ICA model")
        spec, store = network_from_dict(container.classifier)
        return IcaNetworkPredictor(dimred, NetworkPredictor(spec, store))
    if pipeline is Pipeline.FEATURES_KPCA and not isinstance(dimred, KpcaModel):
        raise ContainerError("features_kpca container lacks its KPCA model")
    kpca = dimred if isinstance(dimred, KpcaModel) else None
    return classifier_from_dict(container.classifier, kpca)
