"""Error taxonomy for the adapter."""


class AdapterError(Exception):
    """Base class for everything the adapter raises on purpose."""


class ConfigError(AdapterError):
    """Invalid configuration value or file."""


class AdapterIOError(AdapterError):
    """An image or output path could not be read or written."""


class BackendUnavailableError(AdapterError):
    """The requested model backend cannot run in this environment
    (missing package, or pretrained weights not fetchable)."""
