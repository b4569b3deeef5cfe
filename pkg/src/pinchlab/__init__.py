"""pinchlab - Z2 homology of Grassmannian posets and genus bookkeeping for pinch-off families."""

__version__ = "0.1.0"
