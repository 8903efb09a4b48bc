from lifeheal.main import cli

cli(prog_name="lifeheal")
