from rigorpersist.service.models import DistanceRequest, JobSpec, RunResponse

__all__ = ["JobSpec", "RunResponse", "DistanceRequest"]
