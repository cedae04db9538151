# Use this for mapping to external links
extlinks = {
    "scipy-special": ("https://docs.scipy.org/doc/scipy/reference/special.html%s", None),
    "numpy-random": ("https://numpy.org/doc/stable/reference/random/index.html%s", None),
    "click-docs": ("https://click.palletsprojects.com/en/stable/%s", "%s"),
    "black-coding-style": ("https://black.readthedocs.io/en/stable/the_black_code_style/current_style.html%s", None),
    "wikipedia": ("https://en.wikipedia.org/wiki/%s", "%s"),
}

# Use this for mapping for links to commonly used documentation
intersphinx_mapping = {
    "python": ("https://docs.python.org/3", None),
    "numpy": ("https://numpy.org/doc/stable/", None),
    "scipy": ("https://docs.scipy.org/doc/scipy/", None),
}
