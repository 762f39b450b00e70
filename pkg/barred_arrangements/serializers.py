import json
from fractions import Fraction

from rest_framework import serializers

from .numeric import format_decimal, format_exact


class ExactNumberField(serializers.Field):
    """Integers stay JSON integers; proper fractions become "p/q" strings."""

    def to_representation(self, value):
        if isinstance(value, Fraction) and value.denominator != 1:
            return format_exact(value)
        return int(value)


class IdentityReportSerializer(serializers.Serializer):
    identity = serializers.CharField(help_text="Identity name")
    n = serializers.IntegerField()
    lambda_ = serializers.IntegerField(allow_null=True)
    beta = serializers.IntegerField(allow_null=True)
    gamma = ExactNumberField(allow_null=True)
    lhs = ExactNumberField(help_text="Left side, exact")
    rhs = ExactNumberField(help_text="Right side, exact")
    passed = serializers.BooleanField(read_only=True)

    def to_representation(self, instance):
        data = super().to_representation(instance)
        data['lambda'] = data.pop('lambda_')
        data['pass'] = data.pop('passed')
        for name, value in instance.aux:
            data[name] = value
        return data


class HTableSerializer(serializers.Serializer):
    method = serializers.CharField()
    values = serializers.ListField(child=ExactNumberField())

    def to_representation(self, instance):
        data = instance.params.as_dict()
        data.update(super().to_representation(instance))
        return data


class StirlingEntrySerializer(serializers.Serializer):
    i = serializers.IntegerField()
    scaled = ExactNumberField(help_text="beta^i i! S(n, i, alpha, beta, gamma)")
    value = ExactNumberField(help_text="S(n, i, alpha, beta, gamma)")


class GrowthDiagnosticSerializer(serializers.Serializer):
    n = serializers.IntegerField()
    value = ExactNumberField(help_text="H_n")
    ratio_num = serializers.SerializerMethodField()
    ratio_den = serializers.SerializerMethodField()
    normalized_lo = serializers.SerializerMethodField()
    normalized_hi = serializers.SerializerMethodField()

    CSV_COLUMNS = ['n', 'H_n', 'ratio_num', 'ratio_den', 'normalized_lo', 'normalized_hi']

    def get_ratio_num(self, obj):
        return obj.ratio.numerator

    def get_ratio_den(self, obj):
        return obj.ratio.denominator

    def get_normalized_lo(self, obj):
        return format_decimal(obj.normalized_lo)

    def get_normalized_hi(self, obj):
        return format_decimal(obj.normalized_hi)

    def csv_row(self) -> list:
        data = self.data
        return [data['n'], data['value'], data['ratio_num'], data['ratio_den'],
                data['normalized_lo'], data['normalized_hi']]


class BFileComparisonSerializer(serializers.Serializer):
    source = serializers.CharField()
    compared = serializers.IntegerField()
    matched = serializers.BooleanField(read_only=True)
    first_mismatch = serializers.SerializerMethodField()

    def get_first_mismatch(self, obj):
        if obj.first_mismatch is None:
            return None
        n, expected, computed = obj.first_mismatch
        return {'n': n, 'bfile': expected, 'computed': computed}


def json_line(data: dict) -> str:
    return json.dumps(data, separators=(', ', ': '))
