import logging
import time
import uuid
from typing import Dict, Any, Optional
from enum import Enum
from dataclasses import dataclass, asdict

class EventType(Enum):
    """Standard event types for structured logging"""
    FORMULA_PARSED = "formula_parsed"
    AXIOM_CHECK = "axiom_check"
    CLASSIFICATION = "classification"
    MODEL_SEARCH = "model_search"
    FOCK_STATE = "fock_state"
    BRIDGE = "bridge"
    CLI_COMMAND = "cli_command"

class ActionResult(Enum):
    """Verdict classes carried by events"""
    POSITIVE = "positive"
    NEGATIVE = "negative"
    SKIPPED = "skipped"
    ERROR = "error"

@dataclass
class StructuredEvent:
    """Base structure for all structured log events"""
    event_type: str
    timestamp: float
    result: str
    component: str
    operation: str
    details: Dict[str, Any]
    duration_ms: Optional[int] = None
    error_message: Optional[str] = None
    correlation_id: Optional[str] = None

def new_correlation_id() -> str:
    return uuid.uuid4().hex[:12]

def verdict(positive: bool) -> ActionResult:
    return ActionResult.POSITIVE if positive else ActionResult.NEGATIVE

class StructuredEventLogger:
    """Emits workbench events as JSON-ready records on the named logger"""

    def __init__(self, logger_name: str):
        self.logger = logging.getLogger(logger_name)
        self.correlation_id = None

    def set_correlation_id(self, correlation_id: str):
        """Set correlation ID tying together the events of one CLI invocation"""
        self.correlation_id = correlation_id

    def log_event(self, event) -> None:
        """Log a structured event with consistent schema"""
        if isinstance(event, StructuredEvent):
            if self.correlation_id:
                event.correlation_id = self.correlation_id
            log_data = {
                "structured_event": True,
                **asdict(event)
            }
            result = event.result
            component, operation = event.component, event.operation
            error_message = event.error_message
        elif isinstance(event, dict):
            log_data = {
                "structured_event": True,
                **event
            }
            if self.correlation_id:
                log_data["correlation_id"] = self.correlation_id
            result = event.get("result", "unknown")
            component = event.get("component", "unknown")
            operation = event.get("operation", "unknown")
            error_message = event.get("error_message")
        else:
            raise TypeError(f"Event must be StructuredEvent dataclass or dict, got {type(event)}")

        level = logging.INFO
        if result == ActionResult.ERROR.value:
            level = logging.ERROR
        elif result == ActionResult.SKIPPED.value:
            level = logging.DEBUG

        message = f"{component}.{operation}: {result}"
        if error_message:
            message += f" - {error_message}"

        self.logger.log(level, message, extra={"json_fields": log_data})

    def _emit(self, event_type: EventType, result: ActionResult, component: str, operation: str,
              details: Dict[str, Any], duration_ms: int = None, error_message: str = None) -> None:
        self.log_event(StructuredEvent(
            event_type=event_type.value,
            timestamp=time.time(),
            result=result.value,
            component=component,
            operation=operation,
            details=details,
            duration_ms=duration_ms,
            error_message=error_message
        ))

    def log_formula_parsed(self, formula: str, free_vars: list, expanded: bool = False) -> None:
        self._emit(EventType.FORMULA_PARSED, ActionResult.POSITIVE, "formula", "parse",
                   {"formula": formula, "free_vars": sorted(free_vars), "expanded": expanded})

    def log_axiom_check(self,
                        axiom: str,
                        verdict_value: str,   # "pass", "fail" or "not-finitely-checkable"
                        witness: Dict[str, str] = None,
                        structure_size: int = None) -> None:
        """Log one per-axiom verdict"""
        result = {"pass": ActionResult.POSITIVE, "fail": ActionResult.NEGATIVE}.get(verdict_value, ActionResult.SKIPPED)
        self._emit(EventType.AXIOM_CHECK, result, "mereology", "check_axiom",
                   {"axiom": axiom, "verdict": verdict_value, "witness": witness, "structure_size": structure_size})

    def log_classification(self,
                           subject: str,
                           positive: bool,
                           predicate: str = None,
                           witness: str = None,
                           cardinal: int = None) -> None:
        """Log a Cantorian / classical-part verdict"""
        self._emit(EventType.CLASSIFICATION, verdict(positive), "mereology", "classify",
                   {"subject": subject, "predicate": predicate, "witness": witness, "cardinal": cardinal})

    def log_model_search(self,
                         mode: str,
                         max_size: int,
                         axioms: tuple,
                         found: bool,
                         size: int = None,
                         count: int = None,
                         duration_ms: int = None) -> None:
        """Log a finder run; count mode is always positive"""
        self._emit(EventType.MODEL_SEARCH, verdict(found), "finder", f"search_{mode}",
                   {"mode": mode, "max_size": max_size, "axioms": list(axioms), "size": size, "count": count},
                   duration_ms=duration_ms)

    def log_fock_state(self,
                       label: str,
                       n_max: int,
                       definite: bool,
                       mean_number: float,
                       deficit: float = 0.0) -> None:
        self._emit(EventType.FOCK_STATE, verdict(definite), "fock", "analyse_state",
                   {"label": label, "n_max": n_max, "mean_number": mean_number, "truncation_deficit": deficit})

    def log_bridge(self,
                   label: str,
                   photons: int,
                   cantorian: bool,
                   cardinal: int = None,
                   interpretation: str = None) -> None:
        """Log the state-to-structure bridge and its Cantorian verdict"""
        self._emit(EventType.BRIDGE, verdict(cantorian), "fock", "to_structure",
                   {"label": label, "photons": photons, "cardinal": cardinal, "interpretation": interpretation})

    def log_cli_command(self,
                        command: str,
                        exit_code: int,
                        duration_ms: int = None,
                        error_message: str = None) -> None:
        result = {0: ActionResult.POSITIVE, 1: ActionResult.NEGATIVE}.get(exit_code, ActionResult.ERROR)
        self._emit(EventType.CLI_COMMAND, result, "cli", command,
                   {"command": command, "exit_code": exit_code},
                   duration_ms=duration_ms, error_message=error_message)
