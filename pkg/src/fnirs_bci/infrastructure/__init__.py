"""Infrastructure: file formats, synthetic data and model persistence."""
