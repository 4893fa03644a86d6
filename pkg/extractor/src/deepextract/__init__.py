"""deepextract: CNN activation dumping into the DFT1 feature format."""

from .extract import ExtractorConfig, build_model, extract, list_images

__version__ = "0.1.0"
