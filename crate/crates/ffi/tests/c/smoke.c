#include <stdio.h>
#include "derangement.h"

int main(void) {
    DgGroup *g = NULL;
    if (dg_group_builtin("PSL(3,2)-deg7", 0, &g) != DG_STATUS_OK) {
        puts(dg_last_error());
        return 1;
    }
    size_t order = 0, w = 0;
    bool exact = false, eq = true, conj = true;
    dg_group_order(g, &order);
    dg_clique_number(g, 10080, 100000000, &w, &exact);
    dg_kronecker_equivalent(g, "(2 3)(4 7)", "", &eq, &conj);
    printf("%zu %zu %d %d %d\n", order, w, exact, eq, conj);
    if (dg_group_builtin("nope", 0, &g) != DG_STATUS_NOT_FOUND) return 2;
    dg_group_free(g);
    return 0;
}
