#include <stdio.h>
#include "epsilon_kernel.h"

int main(void) {
    EkFormula *f = NULL, *g = NULL;
    char *s = NULL;
    if (ek_formula_parse("forall x. P(x)", &f) != EK_STATUS_OK) return 1;
    if (ek_formula_translate(f, EK_MODE_CLASSICAL, &g) != EK_STATUS_OK) return 1;
    if (ek_formula_print(g, 1, &s) != EK_STATUS_OK) return 1;
    puts(s);
    ek_string_free(s);
    ek_formula_free(g);
    ek_formula_free(f);
    if (ek_formula_parse("P(", &f) != EK_STATUS_PARSE) return 1;
    puts(ek_last_error());
    return 0;
}
