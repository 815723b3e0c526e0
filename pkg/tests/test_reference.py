import numpy as np
import pytest

from cmradar.reference import chirp_reference


def test_first_entry():
    ref = chirp_reference(4, 16)
    assert ref.vector[0] == pytest.approx(0.125, abs=1e-16)
    assert ref.vector.size == 64


def test_single_entry():
    ref = chirp_reference(1, 1)
    np.testing.assert_allclose(ref.vector, [1.0])


@pytest.mark.parametrize("num_tx,num_samples", [(1, 1), (2, 5), (4, 16), (8, 16), (16, 16), (3, 7)])
def test_constant_modulus_and_orthogonality(num_tx, num_samples):
    ref = chirp_reference(num_tx, num_samples)
    assert np.max(np.abs(np.abs(ref.vector) - 1 / np.sqrt(num_tx * num_samples))) < 1e-14
    assert np.linalg.norm(ref.vector) ** 2 == pytest.approx(1.0, abs=1e-12)
    gram = ref.matrix @ ref.matrix.conj().T
    np.testing.assert_allclose(gram, np.eye(num_tx) / num_tx, atol=1e-12)


def test_stacking_is_sample_major():
    ref = chirp_reference(4, 16)
    np.testing.assert_array_equal(ref.vector[4:8], ref.matrix[:, 1])


def test_too_many_antennas():
    with pytest.raises(ValueError, match="orthogonality unavailable"):
        chirp_reference(5, 4)
