from fractions import Fraction


def val_alpha(input: Fraction):
    """Custom field validator, that checks that alpha lies in the closed unit interval

    Args:
        input (Fraction): Exact rational to validate

    Returns:
        Fraction: Validated input

    Raises:
        ValueError
    """
    if not 0 <= input <= 1:
        raise ValueError("Alpha must satisfy 0 <= alpha <= 1")
    return input


def val_positive_int(input: int):
    """Custom field validator, that checks that integer is positive

    Args:
        input (int): Integer to validate

    Returns:
        int: Validated input

    Raises:
        ValueError
    """
    if input <= 0:
        raise ValueError("Integer must be positive")
    return input


def val_non_negative_int(input: int):
    """Custom field validator, that checks that integer is non-negative

    Args:
        input (int): Integer to validate

    Returns:
        int: Validated input

    Raises:
        ValueError
    """
    if input < 0:
        raise ValueError("Integer must be non-negative")
    return input


def val_cyclomatic(input: int):
    """Custom field validator, that checks that a search space is unicyclic or bicyclic

    Args:
        input (int): Cyclomatic number to validate

    Returns:
        int: Validated input

    Raises:
        ValueError
    """
    if input not in (1, 2):
        raise ValueError("Cyclomatic number must be 1 or 2")
    return input


def val_simple_edges(input: frozenset[tuple[int, int]]):
    """Custom field validator, that checks and normalises an edge set

    Each edge is stored as (u, v) with u < v. Negative labels and self-loops are
    rejected. Multi-edges cannot be represented since the edge set is a set.

    Args:
        input (frozenset[tuple[int, int]]): Edge set to validate

    Returns:
        frozenset[tuple[int, int]]: Normalised edge set

    Raises:
        ValueError
    """
    normalised = set()
    for u, v in input:
        if u == v:
            raise ValueError(f"Self-loop at vertex {u} is not allowed")
        if u < 0 or v < 0:
            raise ValueError(f"Vertex labels must be non-negative, got ({u}, {v})")
        normalised.add((min(u, v), max(u, v)))
    return frozenset(normalised)


def val_trimmed_coefficients(input: tuple[Fraction, ...]):
    """Custom field validator, that strips trailing zero coefficients

    Coefficients are stored lowest degree first, so a nonzero polynomial always
    ends in its leading coefficient and the zero polynomial is the empty tuple.

    Args:
        input (tuple[Fraction, ...]): Coefficients to validate

    Returns:
        tuple[Fraction, ...]: Trimmed coefficients
    """
    end = len(input)
    while end and input[end - 1] == 0:
        end -= 1
    return tuple(input[:end])


def val_decimal_alpha(input: str):
    """Custom field validator, that checks that a string is a plain decimal or fraction literal

    Args:
        input (str): String such as "0.1", "1/3" or "1"

    Returns:
        str: Validated input

    Raises:
        ValueError
    """
    try:
        value = Fraction(input.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"'{input}' is not a decimal or rational literal: {e}")
    val_alpha(value)
    return input
