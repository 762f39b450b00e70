import itertools
import logging

from django.conf import settings
from drf_spectacular.types import OpenApiTypes
from drf_spectacular.utils import OpenApiParameter, extend_schema
from rest_framework.response import Response
from rest_framework.views import APIView

from .asymptotics import ratio_table
from .counting import METHODS, compute
from .enumeration import EnumerationBudget, enumerate_structures
from .identities import SuiteGrid, run_suite
from .serializers import (
    GrowthDiagnosticSerializer,
    HTableSerializer,
    IdentityReportSerializer,
    StirlingEntrySerializer,
)
from .stirling import GsnKey, bell, stirling_row
from .structures import format_structure
from .utils import get_grid_bound, get_int_param, get_n, get_params, validate_method

logger = logging.getLogger(__name__)

PARAM_QUERY = [
    OpenApiParameter(name="lambda", type=OpenApiTypes.INT, required=False, description="Ordinary sections (default 1)"),
    OpenApiParameter(name="beta", type=OpenApiTypes.INT, required=False, description="Compartments per block (default 1)"),
    OpenApiParameter(name="gamma", type=OpenApiTypes.INT, required=False, description="Special compartments (default 0)"),
]


class SequenceAPIView(APIView):
    @extend_schema(
        parameters=PARAM_QUERY + [
            OpenApiParameter(name="n", type=OpenApiTypes.INT, required=False),
            OpenApiParameter(name="method", required=False, enum=list(METHODS)),
        ],
        responses=HTableSerializer,
    )
    def get(self, request):
        method = request.query_params.get("method", "egf")
        if not validate_method(method):
            return Response({"error": f"method must be one of {', '.join(METHODS)}"}, status=400)

        try:
            params = get_params(request.query_params)
            n = get_n(request.query_params)
            table = compute(params, n, method)
            return Response(HTableSerializer(table).data)

        except ValueError as e:
            return Response({"error": str(e)}, status=400)
        except Exception:
            logger.exception("Sequence request failed")
            return Response({"error": "Internal server error"}, status=500)


class StirlingAPIView(APIView):
    @extend_schema(
        parameters=[
            OpenApiParameter(name="n", type=OpenApiTypes.INT, required=True),
            OpenApiParameter(name="alpha", type=OpenApiTypes.INT, required=False),
            OpenApiParameter(name="beta", type=OpenApiTypes.INT, required=False),
            OpenApiParameter(name="gamma", type=OpenApiTypes.INT, required=False),
        ],
        responses=StirlingEntrySerializer(many=True),
    )
    def get(self, request):
        try:
            n = get_n(request.query_params, default=None)
            alpha = get_int_param(request.query_params, "alpha", 0)
            beta = get_int_param(request.query_params, "beta", 1)
            gamma = get_int_param(request.query_params, "gamma", 0)
            GsnKey(n, 0, alpha, beta, gamma)

            rows = [{"i": i, "scaled": scaled, "value": value}
                    for i, scaled, value in stirling_row(n, alpha, beta, gamma)]
            return Response({
                "n": n, "alpha": alpha, "beta": beta, "gamma": gamma,
                "row": StirlingEntrySerializer(rows, many=True).data,
                "bell": bell(n, alpha, beta, gamma),
            })

        except ValueError as e:
            return Response({"error": str(e)}, status=400)
        except Exception:
            logger.exception("Stirling request failed")
            return Response({"error": "Internal server error"}, status=500)


class IdentitiesAPIView(APIView):
    @extend_schema(
        parameters=[
            OpenApiParameter(name="n_max", type=OpenApiTypes.INT, required=False, description="Default 10"),
            OpenApiParameter(name="lambda_max", type=OpenApiTypes.INT, required=False),
            OpenApiParameter(name="beta_max", type=OpenApiTypes.INT, required=False),
            OpenApiParameter(name="gamma_max", type=OpenApiTypes.INT, required=False),
            OpenApiParameter(name="alpha_max", type=OpenApiTypes.INT, required=False),
        ],
        responses=IdentityReportSerializer(many=True),
    )
    def get(self, request):
        try:
            query = request.query_params
            n_max = get_n(query, "n_max", default=10)
            grid = SuiteGrid(
                n_max=n_max,
                lambda_max=get_grid_bound(query, "lambda_max", 2),
                beta_max=get_grid_bound(query, "beta_max", 2, minimum=1),
                gamma_max=get_grid_bound(query, "gamma_max", 2),
                alpha_max=get_grid_bound(query, "alpha_max", 1),
                series_n_max=min(n_max, 10),
                restricted_n_max=min(n_max, 3),
            )
            reports = run_suite(grid)
            return Response({
                "passed": all(r.passed for r in reports),
                "reports": IdentityReportSerializer(reports, many=True).data,
            })

        except ValueError as e:
            return Response({"error": str(e)}, status=400)
        except Exception:
            logger.exception("Identity suite request failed")
            return Response({"error": "Internal server error"}, status=500)


class GrowthAPIView(APIView):
    @extend_schema(
        parameters=PARAM_QUERY + [OpenApiParameter(name="n_max", type=OpenApiTypes.INT, required=False)],
        responses=GrowthDiagnosticSerializer(many=True),
    )
    def get(self, request):
        try:
            params = get_params(request.query_params)
            n_max = get_n(request.query_params, "n_max", default=30)
            rows = ratio_table(params, n_max)
            return Response(GrowthDiagnosticSerializer(rows, many=True).data)

        except ValueError as e:
            return Response({"error": str(e)}, status=400)
        except Exception:
            logger.exception("Growth request failed")
            return Response({"error": "Internal server error"}, status=500)


class StructuresAPIView(APIView):
    @extend_schema(
        parameters=PARAM_QUERY + [
            OpenApiParameter(name="n", type=OpenApiTypes.INT, required=True),
            OpenApiParameter(name="limit", type=OpenApiTypes.INT, required=False, description="Default 100"),
        ],
    )
    def get(self, request):
        try:
            params = get_params(request.query_params)
            n = get_n(request.query_params, default=None)
            limit = get_int_param(request.query_params, "limit", 100, minimum=1)
            budget = EnumerationBudget(settings.BPA_ENUMERATION_BUDGET)

            structures = enumerate_structures(n, params, budget)
            listing = [format_structure(s) for s in itertools.islice(structures, limit)]
            return Response({**params.as_dict(), "n": n, "structures": listing})

        except ValueError as e:
            return Response({"error": str(e)}, status=400)
        except Exception:
            logger.exception("Structure listing failed")
            return Response({"error": "Internal server error"}, status=500)
