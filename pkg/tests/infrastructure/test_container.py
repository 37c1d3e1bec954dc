"""Tests for the model container and its serializers."""

import numpy as np
import pytest

from fnirs_bci.classifiers import LinearModel, SldaModel, Standardizer, logreg_fit, slda_fit
from fnirs_bci.dimred import IcaModel, ica_fit, ica_transform, kpca_fit, kpca_transform
from fnirs_bci.domain import ContainerError, InvalidInputError, array_from_json, array_to_json
from fnirs_bci.infrastructure.persistence import (
    CONTAINER_MAGIC,
    ModelContainer,
    dimred_from_dict,
    load_container,
    model_from_dict,
    model_to_dict,
    network_from_dict,
    network_to_dict,
    save_container,
)
from fnirs_bci.nn import build_params, default_model_spec, dense_model_spec, predict


def _edit(path, old, new):
    text = path.read_text(encoding="utf-8")
    assert old in text
    path.write_text(text.replace(old, new, 1), encoding="utf-8")


@pytest.fixture
def container() -> ModelContainer:
    return ModelContainer(
        pipeline="slda",
        config={"seed": 3, "feature_set": "temporal_mean"},
        classifier={"kind": "slda", "shrinkage": 0.25},
        extras={"feature_names": ["ch01_HbO_w1"], "split": {"test": [1, 4, 7]}},
    )


@pytest.fixture
def blobs(rng):
    labels = np.repeat(np.arange(3), 10)
    return rng.standard_normal((30, 4)) + labels[:, None], labels


class TestContainerFile:
    """Tests for save_container and load_container."""

    def test_round_trip(self, tmp_path, container):
        """Test that a saved container loads back equal with its checksum."""
        path = tmp_path / "model.fnirs"
        checksum = save_container(container, path)
        loaded = load_container(path)
        assert loaded == container
        assert loaded.checksum == checksum == container.checksum

    def test_file_starts_with_magic(self, tmp_path, container):
        """Test the magic line and the single JSON document after it."""
        path = tmp_path / "model.fnirs"
        save_container(container, path)
        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines[0] == CONTAINER_MAGIC
        assert len(lines) == 2

    def test_refuses_overwrite(self, tmp_path, container):
        """Test that an existing file is kept unless forced."""
        path = tmp_path / "model.fnirs"
        path.write_text("keep", encoding="utf-8")
        with pytest.raises(InvalidInputError, match="--force"):
            save_container(container, path)
        assert path.read_text(encoding="utf-8") == "keep"
        save_container(container, path, force=True)
        assert load_container(path) == container

    def test_bad_magic(self, tmp_path, container):
        """Test that a file without the magic line is refused."""
        path = tmp_path / "model.fnirs"
        save_container(container, path)
        _edit(path, CONTAINER_MAGIC, "NOTAMODEL")
        with pytest.raises(ContainerError, match="bad magic"):
            load_container(path)

    def test_unsupported_version(self, tmp_path, container):
        """Test that another format version is refused."""
        path = tmp_path / "model.fnirs"
        save_container(container, path)
        _edit(path, '"format_version":1', '"format_version":2')
        with pytest.raises(ContainerError, match="not supported"):
            load_container(path)

    def test_checksum_mismatch(self, tmp_path, container):
        """Test that an edited payload is detected."""
        path = tmp_path / "model.fnirs"
        save_container(container, path)
        _edit(path, '"shrinkage":0.25', '"shrinkage":0.5')
        with pytest.raises(ContainerError, match="checksum mismatch"):
            load_container(path)

    def test_truncated_body(self, tmp_path, container):
        """Test that a cut-off JSON body is refused."""
        path = tmp_path / "model.fnirs"
        save_container(container, path)
        text = path.read_text(encoding="utf-8")
        path.write_text(text[: len(text) // 2], encoding="utf-8")
        with pytest.raises(ContainerError, match="malformed"):
            load_container(path)

    def test_missing_file(self, tmp_path):
        """Test that a missing container raises ContainerError."""
        with pytest.raises(ContainerError, match="cannot read"):
            load_container(tmp_path / "absent.fnirs")


class TestArrays:
    """Tests for the JSON array layout of FloatArray fields."""

    def test_shape_and_values(self, rng):
        """Test that arrays keep shape and exact values."""
        array = rng.standard_normal((2, 3, 4))
        restored = array_from_json(array_to_json(array))
        np.testing.assert_array_equal(restored, array)
        assert not restored.flags.writeable

    def test_non_finite_rejected(self, blobs):
        """Test that a model holding NaN cannot be stored."""
        X, y = blobs
        model = logreg_fit(X, y)
        broken = LinearModel.model_construct(
            weights=np.full_like(model.weights, np.nan),
            bias=model.bias,
            kind=model.kind,
            classes=model.classes,
            converged=True,
        )
        with pytest.raises(ContainerError, match="non-finite"):
            model_to_dict(broken)

    def test_malformed_blob(self, blobs):
        """Test that a shape/data mismatch is a container error."""
        X, y = blobs
        blob = model_to_dict(slda_fit(X, y))
        blob["means"] = {"shape": [2, 2], "data": [1.0, 2.0, 3.0]}
        with pytest.raises(ContainerError, match="invalid slda document"):
            model_from_dict(blob, SldaModel)


class TestSerializers:
    """Tests that every fitted model survives serialization."""

    def test_slda(self, blobs):
        """Test the sLDA document."""
        X, y = blobs
        model = slda_fit(X, y)
        blob = model_to_dict(model)
        assert blob["kind"] == "slda"
        restored = model_from_dict(blob, SldaModel)
        np.testing.assert_array_equal(restored.predict_proba(X), model.predict_proba(X))
        assert restored.shrinkage == model.shrinkage

    def test_linear(self, blobs):
        """Test the linear-model document."""
        X, y = blobs
        model = logreg_fit(X, y)
        assert model_from_dict(model_to_dict(model), LinearModel) == model

    def test_standardizer(self, blobs):
        """Test the standardizer document and its agreement with scikit-learn statistics."""
        X, _ = blobs
        scaler = Standardizer.fit(X)
        restored = model_from_dict(model_to_dict(scaler), Standardizer)
        np.testing.assert_array_equal(restored.transform(X), scaler.transform(X))
        np.testing.assert_allclose(restored.transform(X).mean(axis=0), 0.0, atol=1e-12)
        np.testing.assert_allclose(restored.transform(X).std(axis=0), 1.0, rtol=1e-12)

    def test_document_survives_file(self, tmp_path, blobs):
        """Test that a document saved in a container file loads back into an equal model."""
        X, y = blobs
        model = slda_fit(X, y)
        path = tmp_path / "model.fnirs"
        save_container(ModelContainer(pipeline="slda", classifier=model_to_dict(model)), path)
        assert model_from_dict(load_container(path).classifier, SldaModel) == model

    def test_kind_mismatch(self, blobs):
        """Test that a document of another kind is refused."""
        X, y = blobs
        blob = model_to_dict(logreg_fit(X, y))
        with pytest.raises(ContainerError, match="SldaModel"):
            model_from_dict(blob, SldaModel)

    def test_unsupported_model(self):
        """Test that only registered model types can be stored."""
        with pytest.raises(ContainerError, match="cannot store"):
            model_to_dict(ModelContainer(pipeline="features", classifier={}))

    def test_ica(self, rng):
        """Test the ICA document."""
        X = rng.laplace(size=(200, 3))
        model = ica_fit(X, n_components=3, seed=1)
        restored = dimred_from_dict(model_to_dict(model))
        assert isinstance(restored, IcaModel)
        np.testing.assert_array_equal(ica_transform(restored, X), ica_transform(model, X))

    def test_kpca(self, rng):
        """Test the kernel PCA document."""
        X = rng.standard_normal((20, 3))
        model = kpca_fit(X, n_components=4)
        restored = dimred_from_dict(model_to_dict(model))
        np.testing.assert_array_equal(kpca_transform(restored, X), kpca_transform(model, X))

    def test_unknown_reduction_kind(self):
        """Test that an unknown reduction model is refused."""
        with pytest.raises(ContainerError, match="unknown reduction"):
            dimred_from_dict({"kind": "pca"})

    def test_dense_network(self, rng):
        """Test the network document on a flat-input network."""
        spec = dense_model_spec(input_width=4, hidden=8)
        store = build_params(spec, seed=5)
        restored_spec, restored = network_from_dict(network_to_dict(spec, store))
        X = rng.standard_normal((6, 4))
        assert restored_spec == spec
        np.testing.assert_array_equal(predict(restored_spec, restored, X), predict(spec, store, X))

    def test_recurrent_network_keeps_buffers(self):
        """Test that batch-norm buffers are stored and optimizer moments are reset."""
        spec = default_model_spec(input_width=4, units=3, dense_units=2)
        store = build_params(spec, seed=5)
        _, restored = network_from_dict(network_to_dict(spec, store))
        assert restored.checksum() == store.checksum()
        assert restored.buffers.keys() == store.buffers.keys()
        assert restored.buffers
        assert all(not np.any(m) for m in restored.optimizer.m.values())
        assert all(value.flags.writeable for value in restored.params.values())
