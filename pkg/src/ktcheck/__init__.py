"""ktcheck: machine checks for Waldhausen-style and Segal-style K-theory
constructions over explicit finite categories."""

__version__ = "0.1.0"
