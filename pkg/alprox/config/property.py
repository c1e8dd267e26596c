# coding=utf-8
"""
Config property
"""

from .config import BaseConfig


class ConfigProp:
    """
    Descriptor exposing one typed configuration value on a BaseConfig subclass.
    """

    def __init__(self, parser: object, default: object = '__NO_DEFAULT__', namespace: str = None) -> None:
        """
        :param parser: callable turning the raw (string) value into its final type
        :param default: raw default value, used when no source defines the key
        :param namespace: optional namespace; the attribute name must then start with it
        """
        self.default = default
        self.parser = parser
        self.namespace = namespace

    @property
    def _key(self):
        if self.namespace is None:
            return self.name

        return self.name.upper().replace(f'{self.namespace.upper()}_', '')

    def _lookup(self, instance):
        kwargs = dict(parser=self.parser, namespace=self.namespace)
        if self.default != '__NO_DEFAULT__':
            kwargs['default'] = self.default
        return getattr(instance, '_config')(self._key, **kwargs)

    def __get__(self, instance, owner=None):
        """
        Returns the descriptor itself when accessed from the class, the parsed value otherwise
        """
        if instance is None:
            return self

        if not isinstance(instance, BaseConfig):
            raise TypeError('ConfigProp can only be used with BaseConfig instances')

        return self._lookup(instance)

    # pylint: disable=attribute-defined-outside-init
    def __set_name__(self, owner, name):
        self.owner = owner
        self.name = name
