"""Command-line entry point orchestrating the full pipeline.

Exit codes: 0 success, 1 diagnostics contained errors, 2 usage error,
3 I/O or network error. Diagnostics go to stderr; machine output (the
``openapi`` subcommand) goes to stdout.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .agent import DEFAULT_THRESHOLD, serve_model_agents
from .agentgen import generate_agent_bundle
from .backend import emit_openapi, generate_backend_bundle, openapi_json
from .checker import check_model, has_errors
from .diagnostics import render_diagnostic
from .frontend import generate_frontend_bundle
from .model import Model
from .parser import parse_model
from .printer import print_model
from .project import GeneratedProject, GenerationError, load_template
from .publisher import MANIFEST_FILE, PublishError, VcsConfig, emit_deploy_manifest, publish
from .server import Store, serve_api
from .serving import ServeError, ServiceHandle

EXIT_OK = 0
EXIT_DIAGNOSTICS = 1
EXIT_USAGE = 2
EXIT_IO = 3

TEMPLATES = ("library", "blank")

GENERATORS = ("backend", "frontend", "agent")


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


def run_cli(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="forge", description="model-driven web application toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p_new = sub.add_parser("new", help="scaffold a model file from a template")
    p_new.add_argument("template", choices=TEMPLATES)
    p_new.add_argument("dir", nargs="?", default=".")
    p_new.set_defaults(handler=_cmd_new)

    p_check = sub.add_parser("check", help="parse and validate a model file")
    p_check.add_argument("file")
    p_check.set_defaults(handler=_cmd_check)

    p_fmt = sub.add_parser("fmt", help="rewrite a model file in canonical form")
    p_fmt.add_argument("file")
    p_fmt.set_defaults(handler=_cmd_fmt)

    p_build = sub.add_parser("build", help="generate the deployable project")
    p_build.add_argument("file")
    p_build.add_argument("-o", "--output", required=True)
    p_build.add_argument("--skip", action="append", choices=GENERATORS, default=[])
    p_build.add_argument("--assets", default=None, help="directory holding a built webkit bundle")
    p_build.set_defaults(handler=_cmd_build)

    p_serve = sub.add_parser("serve", help="serve the CRUD API from a model file")
    p_serve.add_argument("file")
    p_serve.add_argument("--port", type=int, required=True)
    p_serve.set_defaults(handler=_cmd_serve)

    p_agent = sub.add_parser("agent", help="agent service commands")
    agent_sub = p_agent.add_subparsers(dest="agent_command", required=True)
    p_agent_serve = agent_sub.add_parser("serve", help="serve the conversational agents")
    p_agent_serve.add_argument("file")
    p_agent_serve.add_argument("--port", type=int, required=True)
    p_agent_serve.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    p_agent_serve.set_defaults(handler=_cmd_agent_serve)

    p_openapi = sub.add_parser("openapi", help="print the OpenAPI document to stdout")
    p_openapi.add_argument("file")
    p_openapi.set_defaults(handler=_cmd_openapi)

    p_publish = sub.add_parser("publish", help="publish a generated project to a VCS provider")
    p_publish.add_argument("dir")
    p_publish.add_argument("--repo", required=True)
    p_publish.set_defaults(handler=_cmd_publish)

    return parser


def _load_model(path_text: str, checked: bool = True) -> Model | int:
    """Parse (and optionally check) a model file; on failure renders and returns an exit code."""
    path = Path(path_text)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    result = parse_model(text)
    if isinstance(result, list):
        for diag in result:
            print(render_diagnostic(diag, path_text), file=sys.stderr)
        return EXIT_DIAGNOSTICS
    if checked:
        diags = check_model(result)
        for diag in diags:
            print(render_diagnostic(diag, path_text), file=sys.stderr)
        if has_errors(diags):
            return EXIT_DIAGNOSTICS
    return result


def _cmd_new(args) -> int:
    target_dir = Path(args.dir)
    target = target_dir / f"{args.template}.buml"
    if target.exists():
        print(f"error: {target} already exists", file=sys.stderr)
        return EXIT_IO
    try:
        text = load_template(f"{args.template}.buml")
    except GenerationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    target_dir.mkdir(parents=True, exist_ok=True)
    target.write_text(text, encoding="utf-8")
    print(f"wrote {target}")
    return EXIT_OK


def _cmd_check(args) -> int:
    result = _load_model(args.file)
    if isinstance(result, int):
        return result
    return EXIT_OK


def _cmd_fmt(args) -> int:
    result = _load_model(args.file, checked=False)
    if isinstance(result, int):
        return result
    Path(args.file).write_text(print_model(result), encoding="utf-8")
    return EXIT_OK


def _cmd_build(args) -> int:
    result = _load_model(args.file)
    if isinstance(result, int):
        if result == EXIT_DIAGNOSTICS:
            print("error: model has errors; nothing generated", file=sys.stderr)
        return result
    model = result
    project = GeneratedProject()
    try:
        if "backend" not in args.skip:
            project.merge(generate_backend_bundle(model))
        if "frontend" not in args.skip:
            assets = Path(args.assets) if args.assets else None
            project.merge(generate_frontend_bundle(model, assets_dir=assets))
        if "agent" not in args.skip and model.agents:
            project.merge(generate_agent_bundle(model))
        project.add(MANIFEST_FILE, emit_deploy_manifest(model))
    except GenerationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    out_dir = Path(args.output)
    out_dir.mkdir(parents=True, exist_ok=True)
    project.write_to(out_dir)
    print(f"wrote {len(project)} files to {out_dir}")
    return EXIT_OK


def _serve_forever(handle: ServiceHandle) -> int:
    print(f"listening on {handle.base_url}")
    try:
        handle.wait()
    except KeyboardInterrupt:
        handle.stop()
    return EXIT_OK


def _cmd_serve(args) -> int:
    result = _load_model(args.file)
    if isinstance(result, int):
        return result
    try:
        handle = serve_api(result, Store(result), port=args.port)
    except ServeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return _serve_forever(handle)


def _cmd_agent_serve(args) -> int:
    result = _load_model(args.file)
    if isinstance(result, int):
        return result
    if not result.agents:
        print("error: model has no agents", file=sys.stderr)
        return EXIT_DIAGNOSTICS
    try:
        handle = serve_model_agents(result, port=args.port, threshold=args.threshold)
    except ServeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return _serve_forever(handle)


def _cmd_openapi(args) -> int:
    result = _load_model(args.file)
    if isinstance(result, int):
        return result
    sys.stdout.write(openapi_json(emit_openapi(result)))
    return EXIT_OK


def _cmd_publish(args) -> int:
    source = Path(args.dir)
    if not source.is_dir():
        print(f"error: not a directory: {source}", file=sys.stderr)
        return EXIT_IO
    project = GeneratedProject.read_from(source)
    try:
        ref = publish(project, args.repo, VcsConfig.from_env())
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PublishError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(ref.html_url)
    return EXIT_OK
