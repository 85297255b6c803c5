"""Thin command-line client for the verification service.

Every subcommand builds the same request model the HTTP API takes and calls
the same handler; with --url it posts to a running server instead.  Output
is the response JSON on stdout.  Exit codes: 0 verified/found, 1
refuted/none, 2 capped/error.
"""

from __future__ import annotations

import json
import sys

import click

from . import service
from .schemas import (
    CertifyRequest, CollectionModel, ConstructRequest, GroupModel,
    HomologyRequest, SearchRequest, SuiteRequest, VerifyRequest, exit_code_for,
)

_ROUTES = {
    "construct": (service.handle_construct, "/construct"),
    "verify": (service.handle_verify, "/verify"),
    "certify": (service.handle_certify, "/certify"),
    "homology": (service.handle_homology, "/homology"),
    "search": (service.handle_search, "/search"),
    "paper-suite": (service.handle_suite, "/paper-suite"),
}


def _dispatch(route: str, request, url: str | None):
    handler, path = _ROUTES[route]
    if url:
        import httpx
        resp = httpx.post(url.rstrip("/") + path,
                          json=request.model_dump(mode="json"), timeout=None)
        if resp.status_code >= 400:
            click.echo(json.dumps({"error": resp.json().get("detail", resp.text)}))
            sys.exit(2)
        return resp.json(), None
    try:
        response = handler(request)
    except service.ServiceError as exc:
        click.echo(json.dumps({"error": str(exc)}))
        sys.exit(2)
    return response.model_dump(mode="json"), exit_code_for(response)


def _parse_group(text: str):
    """A named group, inline JSON, or @path to a spec file."""
    text = text.strip()
    if text.startswith("@"):
        with open(text[1:]) as fh:
            return GroupModel.model_validate(json.load(fh))
    if text.startswith("{"):
        return GroupModel.model_validate(json.loads(text))
    return text


def _load_collection(path: str) -> CollectionModel:
    if path == "-":
        payload = json.load(sys.stdin)
    else:
        with open(path) as fh:
            payload = json.load(fh)
    # accept the construct-response envelope as well as a bare collection
    if isinstance(payload, dict) and "collection" in payload and "basis" not in payload:
        payload = payload["collection"]
    return CollectionModel.model_validate(payload)


def _emit(payload, code):
    click.echo(json.dumps(payload, indent=2, sort_keys=True))
    sys.exit(code if code is not None else 0)


@click.group()
def main():
    """Admissible collections and homology certificates for finite groups."""


@main.command()
@click.argument("family",
                type=click.Choice(["sym-alt", "a8-p3", "linear", "projective",
                                   "obstruction"]))
@click.option("--n", type=int)
@click.option("--q", type=int)
@click.option("--p", type=int)
@click.option("--kind", type=str, default=None,
              help="alt/sym, SL/GL, PGL/PSL, or GL/SL/GU/SU per family")
@click.option("--quotient", is_flag=True, help="map the result to the central quotient")
@click.option("--url", default=None, help="POST to a running service instead")
def construct(family, n, q, p, kind, quotient, url):
    """Build one of the deterministic collections (JSON on stdout)."""
    req = ConstructRequest(family=family, n=n, q=q, p=p, kind=kind, quotient=quotient)
    payload, code = _dispatch("construct", req, url)
    _emit(payload, code)


@main.command()
@click.option("--collection", "path", required=True,
              help="collection JSON file, or - for stdin")
@click.option("--check", type=click.Choice(["admissible", "faithful"]),
              default="admissible")
@click.option("--url", default=None)
def verify(path, check, url):
    """Run the faithfulness / admissibility checker on a collection."""
    req = VerifyRequest(collection=_load_collection(path), check=check)
    payload, code = _dispatch("verify", req, url)
    _emit(payload, code)


@main.command()
@click.option("--collection", "path", required=True,
              help="collection JSON file, or - for stdin")
@click.option("--no-independent", is_flag=True,
              help="skip the independent full-complex check")
@click.option("--url", default=None)
def certify(path, no_independent, url):
    """Certify a nonzero top-homology class from a collection."""
    req = CertifyRequest(collection=_load_collection(path),
                         independent=not no_independent)
    payload, code = _dispatch("certify", req, url)
    _emit(payload, code)


@main.command()
@click.option("--group", required=True, help='named group (e.g. "Alt(8)"), JSON, or @file')
@click.option("--p", type=int, required=True)
@click.option("--url", default=None)
def homology(group, p, url):
    """Betti numbers and torsion of the p-subgroup poset; reports QD_p."""
    req = HomologyRequest(group=_parse_group(group), p=p)
    payload, code = _dispatch("homology", req, url)
    _emit(payload, code)


@main.command()
@click.option("--group", required=True)
@click.option("--p", type=int, required=True)
@click.option("--exhaustive", is_flag=True, help="do not stop at the first hit")
@click.option("--forced", is_flag=True, help="ignore the central-obstruction shortcut")
@click.option("--no-frame-reduction", is_flag=True)
@click.option("--conjugacy-reduction", is_flag=True)
@click.option("--max-rank", type=int, default=4)
@click.option("--url", default=None)
def search(group, p, exhaustive, forced, no_frame_reduction, conjugacy_reduction,
           max_rank, url):
    """Exhaustive admissible-collection search."""
    req = SearchRequest(
        group=_parse_group(group), p=p,
        max_found=0 if exhaustive else 1,
        forced=forced,
        frame_reduction=not no_frame_reduction,
        conjugacy_reduction=conjugacy_reduction,
        max_rank=max_rank,
    )
    payload, code = _dispatch("search", req, url)
    _emit(payload, code)


@main.command(name="paper-suite")
@click.option("--criteria", default=None,
              help="comma-separated criterion ids (default: all)")
@click.option("--json", "as_json", is_flag=True, help="emit the JSON report")
@click.option("--url", default=None)
def paper_suite_cmd(criteria, as_json, url):
    """Run the full reproduction suite and print the verdict table."""
    wanted = [c.strip() for c in criteria.split(",")] if criteria else None
    req = SuiteRequest(criteria=wanted)
    payload, code = _dispatch("paper-suite", req, url)
    if as_json:
        _emit(payload, code)
    for row in payload["results"]:
        status = "PASS" if row["passed"] else "FAIL"
        click.echo(f"[{status}] criterion {row['criterion']} "
                   f"({row['elapsed_s']:.1f}s): {row['title']}")
    click.echo("ALL PASSED" if payload["all_passed"] else "FAILURES PRESENT")
    sys.exit(code)


@main.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8000)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn
    uvicorn.run("quillenlab.service:app", host=host, port=port)


if __name__ == "__main__":
    main()
