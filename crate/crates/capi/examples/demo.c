/* Minimal consumer of the treelex C API: load the extended fragment,
 * run a query, derive a couple of trees.
 *
 * Build (from the repository root, after `cargo build -p treelex-capi`):
 *   cc examples/demo.c -Iinclude -L../../target/debug -ltreelex_capi \
 *      -lpthread -ldl -lm -o demo
 */

#include <stdio.h>

#include "treelex.h"

int main(void) {
    TlxTheory *theory = NULL;
    char *text = NULL;
    TlxStatus status;

    status = tlx_theory_fragment("extended", &theory);
    if (status != TLX_STATUS_OK) {
        fprintf(stderr, "load failed: %s\n", tlx_last_error_message());
        return 1;
    }
    printf("nodes: %zu\n", (size_t)tlx_theory_node_count(theory));

    status = tlx_theory_query(theory, "Give", "<parent cat>", 0, &text);
    if (status != TLX_STATUS_OK) {
        fprintf(stderr, "query failed: %s\n", tlx_last_error_message());
        tlx_theory_free(theory);
        return 1;
    }
    printf("Give:<parent cat> = %s\n", text);
    tlx_string_free(text);

    status = tlx_theory_tree(theory, "Give", "dative", NULL, NULL, 0, 0, &text);
    if (status != TLX_STATUS_OK) {
        fprintf(stderr, "tree failed: %s\n", tlx_last_error_message());
        tlx_theory_free(theory);
        return 1;
    }
    printf("dative tree = %s\n", text);
    tlx_string_free(text);

    const char *sets[] = {"<right form>=null"};
    status = tlx_theory_tree(theory, "Eat", "whq", NULL, sets, 1, 0, &text);
    if (status != TLX_STATUS_OK) {
        fprintf(stderr, "whq failed: %s\n", tlx_last_error_message());
        tlx_theory_free(theory);
        return 1;
    }
    printf("whq tree = %s\n", text);
    tlx_string_free(text);

    tlx_theory_free(theory);
    return 0;
}
